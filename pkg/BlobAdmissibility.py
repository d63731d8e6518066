"""
:mod: 'BlobAdmissibility'
~~~~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobAdmissibility
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Quantum admissibility of phase space ellipsoids and covariance matrices
    :description: Contains the following classes:

        CovarianceMatrix - symmetric covariance matrix with its xx, xp and pp blocks
        AdmissibilityReport - verdicts and margins of every admissibility criterion

                  Contains the following functions:

        isQuantumBlob - shape matrix is symplectic (fixed point of symplectic polar duality)
        admissibleBySpectrum - largest symplectic eigenvalue <= 1
        admissibleByInclusion - symplectic polar dual contained in the ellipsoid
        tomographySections - sampled symplectic planes and the actions of the dual's sections
        admissibleByTomography - every sampled dual section has action <= pi*hbar
        positivityCheck - Sigma + (i hbar/2) J positive semidefinite
        rsCheck - Robertson-Schroedinger inequalities per degree of freedom
        covarianceEllipsoid - {1/2 Sigma^-1 z.z <= 1}
        infoEllipsoid - {1/2 Sigma z.z <= 1}
        legendreDual - Q -> (hbar/2)^2 Q^-1
        narcowichReport - capacities of the covariance ellipsoid and its Legendre dual
        purity - (hbar/2)^n det(Sigma)^-1/2
        hardyCheck - eigenvalues of AB <= 1
        subgaussianCheck - Wigner sub-Gaussian criterion on a shape matrix
        gaussianWignerDensity - Wigner distribution of a Gaussian state with covariance Sigma
        admissibilityReport - all of the above for one covariance matrix
"""

try:
    import math, sys, os, datetime, logging
    admissibility_logger = logging.getLogger()
    import numpy as np
    # Tiered
    # from . import (BlobErrors, BlobSymplectic, BlobEllipsoid)
    # Flat
    import BlobErrors, BlobSymplectic, BlobEllipsoid
except Exception as err:
    admissibility_logger.error("{0}:BlobAdmissibility import error:{1}".format(str(datetime.datetime.now()), str(err)))

ADMISSIBILITY_TOL = 1e-9
DEFAULT_PLANES = 64

class CovarianceMatrix():
    """
    CovarianceMatrix
    ~~~~~~~~~~~~~~~~
    Covariance matrix of a state on R^2n; symmetry is checked on construction, positive definiteness where an inverse is needed

    Functions
    ~~~~~~~~~
    xx(self), xp(self), pp(self) - the n x n blocks
    shape(self) - (hbar/2) Sigma^-1, the shape matrix of the covariance ellipsoid

    Attributes
    ~~~~~~~~~~
    Sigma (numpy.ndarray type); symmetric 2n x 2n matrix
    hbar (float type); Planck constant in use
    n (int type); degrees of freedom
    """

    def __init__(self, Sigma, hbar = 1.0):
        Sigma = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(Sigma, "Sigma"))
        if not hbar > 0:
            raise BlobErrors.DomainError("hbar must be positive, got {0}".format(hbar))
        self.n = BlobSymplectic.halfDimension(Sigma.shape[0])
        self.Sigma = Sigma
        self.hbar = float(hbar)

    def xx(self):
        return self.Sigma[:self.n, :self.n]

    def xp(self):
        return self.Sigma[:self.n, self.n:]

    def pp(self):
        return self.Sigma[self.n:, self.n:]

    def shape(self):
        BlobSymplectic.sqrtPD(self.Sigma)
        return 0.5 * self.hbar * np.linalg.inv(self.Sigma)

class AdmissibilityReport():
    """
    AdmissibilityReport
    ~~~~~~~~~~~~~~~~~~~
    Verdicts of the admissibility criteria for one ellipsoid / covariance matrix

    Functions
    ~~~~~~~~~
    agree(self) - True when the exact verdicts coincide and the one-sided ones do not contradict them
    toDict(self) - JSON-ready dict

    Attributes
    ~~~~~~~~~~
    spectrum (numpy.ndarray type); symplectic eigenvalues of the hbar-normalized shape matrix
    by_spectrum, by_inclusion, by_tomography, by_positivity, by_rs (bool type); verdicts
    margins (dict type); per-criterion slack, positive when the criterion passes with room
    """

    def __init__(self, spectrum, by_spectrum, by_inclusion, by_tomography, by_positivity, by_rs, margins):
        self.spectrum = spectrum
        self.by_spectrum = by_spectrum
        self.by_inclusion = by_inclusion
        self.by_tomography = by_tomography
        self.by_positivity = by_positivity
        self.by_rs = by_rs
        self.margins = margins

    def agree(self):
        # tomography and RS are necessary conditions only
        exact = self.by_spectrum == self.by_inclusion == self.by_positivity
        one_sided = (self.by_tomography or not self.by_spectrum) and (self.by_rs or not self.by_positivity)
        return bool(exact and one_sided)

    def toDict(self):
        return {"spectrum": [float(v) for v in self.spectrum],
                "by_spectrum": bool(self.by_spectrum),
                "by_inclusion": bool(self.by_inclusion),
                "by_tomography": bool(self.by_tomography),
                "by_positivity": bool(self.by_positivity),
                "by_rs": bool(self.by_rs),
                "margins": {key: float(val) for key, val in self.margins.items()}}

def isQuantumBlob(E, tol = ADMISSIBILITY_TOL):
    try:
        if not E.isCentered():
            return False
        return BlobSymplectic.isSymplectic(E.Q, tol)
    except Exception as err:
        admissibility_logger.error("{0}:isQuantumBlob():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def admissibleBySpectrum(E, tol = ADMISSIBILITY_TOL):
    try:
        lam_max = BlobSymplectic.symplecticEigenvalues(E.Q)[0]
        return bool(lam_max <= 1.0 + tol), float(1.0 - lam_max)
    except Exception as err:
        admissibility_logger.error("{0}:admissibleBySpectrum():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def admissibleByInclusion(E, tol = ADMISSIBILITY_TOL):
    try:
        return BlobEllipsoid.contains(BlobEllipsoid.symplecticPolarDual(E), E, tol)
    except Exception as err:
        admissibility_logger.error("{0}:admissibleByInclusion():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def samplePlanes(n, planes, seed):
    """The n conjugate coordinate planes followed by planes S(x1, p1) for random S in Sp(n)."""
    rng = np.random.default_rng(seed)
    eye = np.eye(2 * n)
    subspaces = [BlobEllipsoid.Subspace(eye[:, [j, n + j]]) for j in range(n)]
    for _ in range(planes):
        S = BlobSymplectic.randomSymplectic(n, rng)
        subspaces.append(BlobEllipsoid.Subspace(S[:, [0, n]]))
    return subspaces

def tomographySections(E, planes = DEFAULT_PLANES, seed = 0):
    """Returns [(Subspace, action of the dual's section)] over the sampled symplectic planes."""
    try:
        n = BlobSymplectic.halfDimension(E.dim)
        dual = BlobEllipsoid.symplecticPolarDual(E)
        return [(F, BlobEllipsoid.planeSectionSymplecticArea(dual, F)) for F in samplePlanes(n, planes, seed)]
    except Exception as err:
        admissibility_logger.error("{0}:tomographySections():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def admissibleByTomography(E, planes = DEFAULT_PLANES, seed = 0, tol = ADMISSIBILITY_TOL):
    """
    One-sided test: a False verdict is conclusive, a True verdict only says
    no sampled plane violated the bound.
    """
    try:
        sections = tomographySections(E, planes, seed)
        worst = max(abs(action) for _, action in sections)
        return bool(worst <= math.pi * E.hbar * (1.0 + tol))
    except Exception as err:
        admissibility_logger.error("{0}:admissibleByTomography():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def positivityCheck(cov, tol = ADMISSIBILITY_TOL):
    """
    Smallest eigenvalue of Sigma + (i hbar/2) J through its real embedding
    [[Sigma, -(hbar/2) J], [(hbar/2) J, Sigma]].
    """
    try:
        half = 0.5 * cov.hbar * BlobSymplectic.standardJ(cov.n)
        embedded = np.block([[cov.Sigma, -half], [half, cov.Sigma]])
        min_eig = float(np.linalg.eigvalsh(0.5 * (embedded + embedded.T))[0])
        scale = max(1.0, np.max(np.abs(cov.Sigma)))
        return bool(min_eig >= -tol * scale), min_eig
    except Exception as err:
        admissibility_logger.error("{0}:positivityCheck():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def rsCheck(cov, tol = ADMISSIBILITY_TOL):
    try:
        results = []
        for j in range(cov.n):
            lhs = float(cov.Sigma[j, j] * cov.Sigma[cov.n + j, cov.n + j])
            rhs = float(cov.Sigma[j, cov.n + j] ** 2 + 0.25 * cov.hbar ** 2)
            results.append((lhs, rhs, bool(lhs >= rhs - tol * max(1.0, abs(rhs)))))
        return results
    except Exception as err:
        admissibility_logger.error("{0}:rsCheck():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def covarianceEllipsoid(cov):
    return BlobEllipsoid.Ellipsoid(cov.shape(), None, cov.hbar)

def infoEllipsoid(cov):
    BlobSymplectic.sqrtPD(cov.Sigma)
    return BlobEllipsoid.Ellipsoid(0.5 * cov.hbar * cov.Sigma, None, cov.hbar)

def legendreDual(E):
    try:
        BlobEllipsoid.requireCentered(E, "Legendre duality")
        return BlobEllipsoid.Ellipsoid((0.5 * E.hbar) ** 2 * np.linalg.inv(E.Q), None, E.hbar)
    except Exception as err:
        admissibility_logger.error("{0}:legendreDual():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def narcowichReport(cov, planes = DEFAULT_PLANES, seed = 0, tol = ADMISSIBILITY_TOL):
    """
    Capacity diagnostics of the covariance ellipsoid and of its Legendre dual
    Omega* (the information ellipsoid).

    For M = (hbar/2) Sigma^-1: c(Omega_cov) = pi*hbar/lambda_max(M) and
    c(Omega*) = (4 pi/hbar) lambda_min(M). Both comparisons of c(Omega*) with
    4 pi/hbar are reported. Sections of Omega* are sampled on symplectic
    planes and, for n >= 2, on null planes S(x1, x2) where the action vanishes.
    """
    try:
        hbar = cov.hbar
        omega_cov = covarianceEllipsoid(cov)
        omega_star = legendreDual(omega_cov)
        spectrum = BlobSymplectic.symplecticEigenvalues(omega_cov.Q)
        c_cov = math.pi * hbar / spectrum[0]
        c_star = math.pi * hbar / BlobSymplectic.symplecticEigenvalues(omega_star.Q)[0]
        threshold = 4.0 * math.pi / hbar
        sections = [abs(BlobEllipsoid.planeSectionSymplecticArea(omega_star, F)) for F in samplePlanes(cov.n, planes, seed)]
        null_max = None
        if cov.n >= 2:
            rng = np.random.default_rng(seed)
            null_actions = []
            for _ in range(max(1, planes // 4)):
                S = BlobSymplectic.randomSymplectic(cov.n, rng)
                null_actions.append(abs(BlobEllipsoid.planeSectionSymplecticArea(omega_star, BlobEllipsoid.Subspace(S[:, [0, 1]]))))
            null_max = float(max(null_actions))
        return {"c_cov": float(c_cov),
                "c_cov_at_least_pi_hbar": bool(c_cov >= math.pi * hbar * (1.0 - tol)),
                "c_star": float(c_star),
                "threshold_4pi_over_hbar": float(threshold),
                "c_star_leq_threshold": bool(c_star <= threshold * (1.0 + tol)),
                "c_star_geq_threshold": bool(c_star >= threshold * (1.0 - tol)),
                "max_section_action": float(max(sections)),
                "max_null_section_action": null_max}
    except Exception as err:
        admissibility_logger.error("{0}:narcowichReport():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def purity(cov, tol = ADMISSIBILITY_TOL):
    """(hbar/2)^n det(Sigma)^-1/2; a value above 1 + tol marks an unphysical Sigma and is logged."""
    try:
        sign, logdet = np.linalg.slogdet(cov.Sigma)
        if sign <= 0:
            raise BlobErrors.NotPositiveDefiniteError("covariance matrix is not positive definite")
        mu = math.exp(cov.n * math.log(0.5 * cov.hbar) - 0.5 * logdet)
        if mu > 1.0 + tol:
            admissibility_logger.warning("{0}:purity():unphysical covariance, purity {1:.6g} > 1".format(str(datetime.datetime.now()), mu))
        return float(mu)
    except Exception as err:
        admissibility_logger.error("{0}:purity():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def hardyCheck(A, B, tol = ADMISSIBILITY_TOL):
    """Returns (passes, eigenvalues of AB ascending, saturated); AB is similar to A^1/2 B A^1/2."""
    try:
        A = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(A, "A"))
        B = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(B, "B"))
        if A.shape != B.shape:
            raise BlobErrors.DimensionError("A and B have shapes {0} and {1}".format(A.shape, B.shape))
        root, _ = BlobSymplectic.sqrtPD(A)
        BlobSymplectic.sqrtPD(B)
        eigenvalues = np.linalg.eigvalsh(root @ B @ root)
        passes = bool(eigenvalues[-1] <= 1.0 + tol)
        saturated = bool(np.all(np.abs(eigenvalues - 1.0) <= tol))
        return passes, eigenvalues, saturated
    except Exception as err:
        admissibility_logger.error("{0}:hardyCheck():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def subgaussianCheck(M, hbar = 1.0, tol = ADMISSIBILITY_TOL):
    return admissibleBySpectrum(BlobEllipsoid.Ellipsoid(M, None, hbar), tol)[0]

def gaussianWignerDensity(cov, z, center = None):
    """(2 pi)^-n det(Sigma)^-1/2 exp(-1/2 Sigma^-1 (z - z0).(z - z0)), vectorized over rows of z."""
    try:
        Z = np.atleast_2d(np.asarray(z, dtype = float))
        if center is not None:
            Z = Z - np.asarray(center, dtype = float)
        _, logdet = np.linalg.slogdet(cov.Sigma)
        Sigma_inv = np.linalg.inv(cov.Sigma)
        quad = np.einsum("ij,jk,ik->i", Z, Sigma_inv, Z)
        values = np.exp(-cov.n * math.log(2.0 * math.pi) - 0.5 * logdet - 0.5 * quad)
        return values if np.ndim(z) > 1 else float(values[0])
    except Exception as err:
        admissibility_logger.error("{0}:gaussianWignerDensity():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def admissibilityReport(cov, planes = DEFAULT_PLANES, seed = 0, tol = ADMISSIBILITY_TOL):
    try:
        E = covarianceEllipsoid(cov)
        spectrum = BlobSymplectic.symplecticEigenvalues(E.Q)
        by_spectrum, spectral_margin = admissibleBySpectrum(E, tol)
        by_inclusion = admissibleByInclusion(E, tol)
        inclusion_margin = 1.0 - BlobEllipsoid.containmentRatio(BlobEllipsoid.symplecticPolarDual(E), E)
        sections = tomographySections(E, planes, seed)
        worst = max(abs(action) for _, action in sections)
        by_tomography = bool(worst <= math.pi * E.hbar * (1.0 + tol))
        by_positivity, min_eig = positivityCheck(cov, tol)
        rs = rsCheck(cov, tol)
        margins = {"spectrum": spectral_margin,
                   "inclusion": inclusion_margin,
                   "tomography": 1.0 - worst / (math.pi * E.hbar),
                   "positivity": min_eig,
                   "rs": min(lhs - rhs for lhs, rhs, _ in rs)}
        return AdmissibilityReport(spectrum, by_spectrum, by_inclusion, by_tomography, by_positivity, all(ok for _, _, ok in rs), margins)
    except Exception as err:
        admissibility_logger.error("{0}:admissibilityReport():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
