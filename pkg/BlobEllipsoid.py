"""
:mod: 'BlobEllipsoid'
~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobEllipsoid
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Ellipsoids {z : Q(z-c).(z-c) <= hbar}, subspaces, and the polar duality geometry built on them
    :description: Contains the following classes:

        Ellipsoid - shape matrix, center and level of a (possibly affine) ellipsoid
        Subspace - linear subspace carried by an orthonormal basis

                  Contains the following functions:

        polarDual - ordinary hbar-polar dual of a centered ellipsoid
        symplecticPolarDual - symplectic hbar-polar dual, J applied to the ordinary dual
        project - orthogonal shadow on a subspace, in the subspace's coordinates
        intersectSubspace - section by a subspace, in the subspace's coordinates
        planeSectionArea - Euclidean area of a two-dimensional section
        planeSectionSymplecticArea - action of a two-dimensional section
        volume - Lebesgue volume
        mahlerVolume - volume times volume of the polar dual
        johnOfProduct - John ellipsoid of a product of an x-ellipsoid and a p-ellipsoid
        loewnerOfProduct - Loewner ellipsoid of the same product
        contains - inclusion test E1 in E2 for ellipsoids sharing a center
        containmentRatio - the smallest t with E1 in sqrt(t)-dilate of E2
        enclosingEllipsoidOfPoints - minimum volume enclosing ellipsoid of a point cloud (Khachiyan)
"""

try:
    import math, sys, os, datetime, logging
    ellipsoid_logger = logging.getLogger()
    import numpy as np
    import scipy.linalg
    from scipy.special import gammaln
    # Tiered
    # from . import (BlobErrors, BlobSymplectic)
    # Flat
    import BlobErrors, BlobSymplectic
except Exception as err:
    ellipsoid_logger.error("{0}:BlobEllipsoid import error:{1}".format(str(datetime.datetime.now()), str(err)))

CENTER_TOL = 1e-12
BASIS_TOL = 1e-10

class Ellipsoid():
    """
    Ellipsoid
    ~~~~~~~~~
    The set {z : Q(z - center).(z - center) <= hbar}; treated as an immutable value

    Functions
    ~~~~~~~~~
    isCentered(self, tol) - True if the center is the origin
    image(self, A) - image under an invertible linear map
    scaled(self, factor) - dilate by factor about the center
    translated(self, v) - shift the center by v
    atLevel(self, hbar) - the same set described at another level
    normalizedRadius(self, points) - sqrt(Q(z - c).(z - c) / hbar) for each row of points
    containsPoints(self, points, tol) - membership of each row of points

    Attributes
    ~~~~~~~~~~
    Q (numpy.ndarray type); symmetric positive definite shape matrix
    center (numpy.ndarray type); center vector
    hbar (float type); level
    dim (int type); ambient dimension
    """

    def __init__(self, Q, center = None, hbar = 1.0, pd_tol = BlobSymplectic.PD_TOL, sym_tol = BlobSymplectic.SYM_TOL):
        Q = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(Q, "Q"), sym_tol)
        w = np.linalg.eigvalsh(Q)
        if w[0] <= pd_tol * max(np.max(np.abs(w)), np.finfo(float).tiny):
            raise BlobErrors.NotPositiveDefiniteError("ellipsoid shape matrix is not positive definite (min eigenvalue {0:.6g})".format(w[0]))
        if not hbar > 0:
            raise BlobErrors.DomainError("hbar must be positive, got {0}".format(hbar))
        self.Q = Q
        self.dim = Q.shape[0]
        self.hbar = float(hbar)
        if center is None:
            self.center = np.zeros(self.dim)
        else:
            self.center = np.array(center, dtype = float).reshape(-1)
            if self.center.shape[0] != self.dim:
                raise BlobErrors.DimensionError("center has length {0}, shape matrix is {1}x{1}".format(self.center.shape[0], self.dim))

    def __repr__(self):
        return "Ellipsoid(dim={0}, hbar={1})".format(self.dim, self.hbar)

    def isCentered(self, tol = CENTER_TOL):
        return bool(np.max(np.abs(self.center), initial = 0.0) <= tol)

    def image(self, A):
        A = BlobSymplectic.asSquare(A, "A")
        A_inv = np.linalg.inv(A)
        return Ellipsoid(A_inv.T @ self.Q @ A_inv, A @ self.center, self.hbar)

    def scaled(self, factor):
        return Ellipsoid(self.Q / factor ** 2, self.center, self.hbar)

    def translated(self, v):
        return Ellipsoid(self.Q, self.center + np.asarray(v, dtype = float), self.hbar)

    def atLevel(self, hbar):
        return Ellipsoid(self.Q * (hbar / self.hbar), self.center, hbar)

    def normalizedRadius(self, points):
        D = np.atleast_2d(np.asarray(points, dtype = float)) - self.center
        return np.sqrt(np.einsum("ij,jk,ik->i", D, self.Q, D) / self.hbar)

    def containsPoints(self, points, tol = 1e-9):
        return self.normalizedRadius(points) <= 1.0 + tol

class Subspace():
    """
    Subspace
    ~~~~~~~~
    Linear subspace; the input columns are orthonormalized by QR, keeping their orientation

    Functions
    ~~~~~~~~~
    projector(self) - orthogonal projector onto the subspace

    Attributes
    ~~~~~~~~~~
    basis (numpy.ndarray type); d x k matrix with orthonormal columns
    ambient (int type); d
    dim (int type); k
    """

    def __init__(self, basis, tol = BASIS_TOL):
        self.basis, _ = BlobSymplectic.orthonormalColumns(basis, tol)
        self.ambient, self.dim = self.basis.shape

    def projector(self):
        return self.basis @ self.basis.T

def requireCentered(E, name):
    if not E.isCentered():
        raise BlobErrors.UnsupportedError("{0} requires a centered ellipsoid".format(name))

def requireAmbient(E, F):
    if F.ambient != E.dim:
        raise BlobErrors.DimensionError("subspace lives in dimension {0}, ellipsoid in {1}".format(F.ambient, E.dim))

def polarDual(E):
    """{p : p.z <= hbar for all z in E} = {Q^-1 p.p <= hbar}; non-centered bodies need a Santalo point and are rejected."""
    try:
        requireCentered(E, "polar duality")
        return Ellipsoid(np.linalg.inv(E.Q), None, E.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:polarDual():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def symplecticPolarDual(E):
    try:
        n = BlobSymplectic.halfDimension(E.dim)
        requireCentered(E, "symplectic polar duality")
        J = BlobSymplectic.standardJ(n)
        return Ellipsoid(-J @ np.linalg.inv(E.Q) @ J, None, E.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:symplecticPolarDual():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def project(E, F):
    """Shadow of E on F, shape (B^T Q^-1 B)^-1 in the basis B of F."""
    try:
        requireAmbient(E, F)
        B = F.basis
        shadow = np.linalg.inv(B.T @ np.linalg.inv(E.Q) @ B)
        return Ellipsoid(shadow, B.T @ E.center, E.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:project():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def intersectSubspace(E, F):
    try:
        requireAmbient(E, F)
        requireCentered(E, "subspace section")
        B = F.basis
        return Ellipsoid(B.T @ E.Q @ B, None, E.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:intersectSubspace():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def requirePlane(F):
    if F.dim != 2:
        raise BlobErrors.DimensionError("a plane section needs a two-dimensional subspace, got dimension {0}".format(F.dim))

def planeSectionArea(E, F):
    try:
        requirePlane(F)
        section = intersectSubspace(E, F)
        return float(math.pi * E.hbar / math.sqrt(np.linalg.det(section.Q)))
    except Exception as err:
        ellipsoid_logger.error("{0}:planeSectionArea():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def planeSectionSymplecticArea(E, F):
    """
    Action of the section E n F: the integral of p dx along the section
    boundary, traversed in the direction of its own Hamiltonian flow when
    (u, v) is the orientation of F. Equals (u.Jv) times the Euclidean area;
    0 on null planes, pi*hbar on the (x1, p1) section of the ball.
    u.Jv is minus BlobSymplectic.symplecticForm(u, v).
    """
    try:
        requirePlane(F)
        n = BlobSymplectic.halfDimension(E.dim)
        u, v = F.basis[:, 0], F.basis[:, 1]
        orientation = float(u @ BlobSymplectic.standardJ(n) @ v)
        return orientation * planeSectionArea(E, F)
    except Exception as err:
        ellipsoid_logger.error("{0}:planeSectionSymplecticArea():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def logVolume(E):
    d = E.dim
    _, logdet = np.linalg.slogdet(E.Q)
    return 0.5 * d * math.log(math.pi * E.hbar) - gammaln(0.5 * d + 1.0) - 0.5 * logdet

def volume(E):
    return float(math.exp(logVolume(E)))

def mahlerVolume(E):
    try:
        return float(math.exp(logVolume(E) + logVolume(polarDual(E))))
    except Exception as err:
        ellipsoid_logger.error("{0}:mahlerVolume():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def productShape(E1, E2):
    requireCentered(E1, "product ellipsoids")
    requireCentered(E2, "product ellipsoids")
    if E1.dim != E2.dim:
        raise BlobErrors.DimensionError("factors have dimensions {0} and {1}".format(E1.dim, E2.dim))
    # describe both factors at the level of E1
    return scipy.linalg.block_diag(E1.Q, E2.Q * (E1.hbar / E2.hbar))

def johnOfProduct(E1, E2):
    """
    John ellipsoid of E1 x E2. The block map diag(Q1^1/2, Q2^1/2) sends the
    product to B(R) x B(R), whose John ellipsoid is the ball B(R).
    """
    try:
        return Ellipsoid(productShape(E1, E2), None, E1.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:johnOfProduct():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def loewnerOfProduct(E1, E2):
    """Loewner ellipsoid of E1 x E2; the Loewner ellipsoid of B(R) x B(R) is the ball of radius sqrt(2)*R."""
    try:
        return Ellipsoid(0.5 * productShape(E1, E2), None, E1.hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:loewnerOfProduct():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def containmentRatio(E1, E2):
    """max over E1 of Q2(z-c).(z-c)/hbar2; E1 is inside E2 iff this is <= 1."""
    if E1.dim != E2.dim:
        raise BlobErrors.DimensionError("ellipsoids have dimensions {0} and {1}".format(E1.dim, E2.dim))
    scale = max(1.0, np.max(np.abs(E1.center)), np.max(np.abs(E2.center)))
    if np.max(np.abs(E1.center - E2.center)) > 1e-9 * scale:
        raise BlobErrors.UnsupportedError("containment is only decided for ellipsoids sharing a center")
    mu = scipy.linalg.eigh(E2.Q, E1.Q, eigvals_only = True)
    return float(mu[-1] * E1.hbar / E2.hbar)

def contains(E1, E2, tol = 1e-9):
    """True iff E1 is a subset of E2, i.e. Q2/hbar2 <= Q1/hbar1 in the Loewner order."""
    try:
        return containmentRatio(E1, E2) <= 1.0 + tol
    except Exception as err:
        ellipsoid_logger.error("{0}:contains():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def enclosingEllipsoidOfPoints(points, tol = 1e-7, hbar = 1.0, max_iter = 100000):
    """
    Khachiyan's algorithm for the minimum volume ellipsoid enclosing the rows
    of points; returned as an Ellipsoid at level hbar.
    """
    try:
        P = np.asarray(points, dtype = float)
        N, d = P.shape
        if N <= d:
            raise BlobErrors.DomainError("need more than {0} points in dimension {0}".format(d))
        lifted = np.vstack((P.T, np.ones(N)))
        u = np.ones(N) / N
        err = tol + 1.0
        iterations = 0
        while err > tol and iterations < max_iter:
            X_inv = np.linalg.inv(np.einsum("ij,j,kj", lifted, u, lifted))
            M = np.einsum("ji,jk,ki->i", lifted, X_inv, lifted)
            j = int(np.argmax(M))
            step = (1.0 - d / (M[j] - 1.0)) / (d + 1.0)
            u_new = (1.0 - step) * u
            u_new[j] += step
            err = float(np.linalg.norm(u_new - u))
            u = u_new
            iterations += 1
        c = u @ P
        A = (np.einsum("ji,j,jk", P, u, P) - np.outer(c, c)) * d
        ellipsoid_logger.debug("{0}:enclosingEllipsoidOfPoints():{1} iterations".format(str(datetime.datetime.now()), iterations))
        return Ellipsoid(hbar * np.linalg.inv(A), c, hbar)
    except Exception as err:
        ellipsoid_logger.error("{0}:enclosingEllipsoidOfPoints():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
