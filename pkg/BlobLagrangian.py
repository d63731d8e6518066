"""
:mod: 'BlobLagrangian'
~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobLagrangian
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Lagrangian planes and frames, geometric quantum states (pure and mixed) and their correspondence with generalized Gaussians
    :description: Contains the following classes:

        LagrangianPlane - n-dimensional isotropic subspace of R^2n with an orthonormal basis
        LagrangianFrame - pair of transversal Lagrangian planes
        GeometricState - X_l x (X_l)^hbar_l' + z0, an ellipsoid on l times its Lagrangian polar dual on l'
        MixedGeometricState - X_l x P_l' + z0 with P_l' containing the Lagrangian polar dual of X_l
        GaussianState - parameters (A, B, z0) of the displaced generalized Gaussian psi_AB, modulo phase

                  Contains the following functions:

        frameTransport - S in Sp(n) carrying the canonical frame (l_X, l_P) to a given frame
        lagrangianPolarDual - Lagrangian polar dual of an ellipsoid of l, in l' coordinates
        act - action of Sp(n) on geometric states
        actAffine - action of the inhomogeneous symplectic group
        johnOfState - John ellipsoid of a (mixed) geometric state with its admissibility verdict
        toGaussian - geometric state -> Gaussian, through G = (S S^T)^-1
        fromGaussian - Gaussian -> geometric state S_AB(B_X x B_P) + z0
        wignerMatrix - G = [[A + B A^-1 B, B A^-1], [A^-1 B, A^-1]]
        gaussianFromWigner - (A, B) from G: A = G_pp^-1, B = G_xp G_pp^-1
        metaplecticAct - G -> S^-T G S^-1, z0 -> S z0
        displace - Heisenberg-Weyl displacement of the center
        covarianceOfGaussian - (hbar/2) G^-1
        marginalsGaussian - covariance blocks of the position and momentum densities
        wignerDensity - (pi hbar)^-n exp(-G(z - z0).(z - z0)/hbar)
        positionDensity - |psi_AB(x)|^2
        marginalQuadratureCheck - integrates the Wigner function over p and compares with |psi_AB|^2 (n = 1)
"""

try:
    import math, sys, os, datetime, logging
    lagrangian_logger = logging.getLogger()
    import numpy as np
    import scipy.linalg
    from scipy.integrate import quad
    # Tiered
    # from . import (BlobErrors, BlobSymplectic, BlobEllipsoid, BlobAdmissibility)
    # Flat
    import BlobErrors, BlobSymplectic, BlobEllipsoid, BlobAdmissibility
except Exception as err:
    lagrangian_logger.error("{0}:BlobLagrangian import error:{1}".format(str(datetime.datetime.now()), str(err)))

FRAME_TOL = 1e-8
STATE_TOL = 1e-8
WIGNER_TOL = 1e-9
DET_TOL = 1e-6
# smallest singular value of the x-block below which the O(n) gauge is left unfixed
GAUGE_TOL = 1e-8

class LagrangianPlane():
    """
    LagrangianPlane
    ~~~~~~~~~~~~~~~
    n-dimensional subspace of (R^2n, sigma) on which sigma vanishes; the basis is orthonormalized on construction

    Functions
    ~~~~~~~~~
    projector(self) - orthogonal projector onto the plane

    Attributes
    ~~~~~~~~~~
    basis (numpy.ndarray type); 2n x n orthonormal basis
    n (int type); degrees of freedom
    """

    def __init__(self, basis, tol = BlobSymplectic.SP_TOL):
        B = np.array(basis, dtype = float)
        if B.ndim == 1:
            B = B[:, None]
        self.n = BlobSymplectic.halfDimension(B.shape[0])
        if B.shape[1] != self.n:
            raise BlobErrors.RankError("a Lagrangian plane in dimension {0} needs {1} basis vectors, got {2}".format(2 * self.n, self.n, B.shape[1]))
        self.basis, _ = BlobSymplectic.orthonormalColumns(B)
        isotropy = float(np.max(np.abs(self.basis.T @ BlobSymplectic.standardJ(self.n) @ self.basis)))
        if isotropy > tol:
            raise BlobErrors.IsotropyError("plane is not Lagrangian (isotropy residual {0:.3e})".format(isotropy))

    def projector(self):
        return self.basis @ self.basis.T

class LagrangianFrame():
    """
    LagrangianFrame
    ~~~~~~~~~~~~~~~
    Pair (l, l') of Lagrangian planes with l n l' = 0

    Functions
    ~~~~~~~~~
    canonical(n) - static; the frame (l_X, l_P)
    pairing(self) - C = U^T J V for the bases U of l and V of l'; invertible exactly on transversal frames

    Attributes
    ~~~~~~~~~~
    ell (LagrangianPlane type); first plane
    ellPrime (LagrangianPlane type); second plane
    n (int type); degrees of freedom
    """

    def __init__(self, ell, ellPrime, frame_tol = FRAME_TOL):
        self.ell = ell if isinstance(ell, LagrangianPlane) else LagrangianPlane(ell)
        self.ellPrime = ellPrime if isinstance(ellPrime, LagrangianPlane) else LagrangianPlane(ellPrime)
        if self.ell.n != self.ellPrime.n:
            raise BlobErrors.DimensionError("frame planes live in dimensions {0} and {1}".format(2 * self.ell.n, 2 * self.ellPrime.n))
        self.n = self.ell.n
        smallest = np.linalg.svd(np.hstack([self.ell.basis, self.ellPrime.basis]), compute_uv = False)[-1]
        if smallest < frame_tol:
            raise BlobErrors.TransversalityError("frame planes are not transversal (smallest singular value {0:.3e})".format(smallest))

    @staticmethod
    def canonical(n):
        eye = np.eye(2 * n)
        return LagrangianFrame(eye[:, :n], eye[:, n:])

    def pairing(self):
        return self.ell.basis.T @ BlobSymplectic.standardJ(self.n) @ self.ellPrime.basis

def frameTransport(frame):
    """
    S in Sp(n) with S(l_X) = l and S(l_P) = l'. The first n columns are the
    orthonormal basis U of l; completeSymplecticBasis gives [U, -JU], and the
    shear [[I, K], [0, I]] moves the second block onto l'.
    """
    try:
        n = frame.n
        U = frame.ell.basis
        S0 = BlobSymplectic.completeSymplecticBasis(U)
        F = frame.ellPrime.basis @ np.linalg.inv(frame.pairing())
        K = U.T @ F
        shear = np.eye(2 * n)
        shear[:n, n:] = 0.5 * (K + K.T)
        return S0 @ shear
    except Exception as err:
        lagrangian_logger.error("{0}:frameTransport():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def lagrangianPolarDual(shapeX, frame, hbar = 1.0):
    """
    {z' in l' : sigma(z, z') <= hbar for all z in X_l} in the orthonormal
    coordinates of l'. After transport to the canonical frame the dual is the
    ordinary polar dual A^-1; with C = U^T J V the shape reads C^T A^-1 C.
    """
    try:
        X = BlobEllipsoid.Ellipsoid(shapeX, None, hbar)
        if X.dim != frame.n:
            raise BlobErrors.DimensionError("shapeX is {0}x{0}, frame has n = {1}".format(X.dim, frame.n))
        C = frame.pairing()
        return BlobEllipsoid.Ellipsoid(C.T @ np.linalg.inv(X.Q) @ C, None, hbar)
    except Exception as err:
        lagrangian_logger.error("{0}:lagrangianPolarDual():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def transportPlane(S, basis, shape):
    """Image of the ellipsoid {B y : shape y.y <= hbar} under S, re-expressed in an orthonormal basis of S(span B)."""
    new_basis, R = BlobSymplectic.orthonormalColumns(S @ basis)
    R_inv = np.linalg.inv(R)
    return new_basis, R_inv.T @ shape @ R_inv

class GeometricState():
    """
    GeometricState
    ~~~~~~~~~~~~~~
    Pure elliptic geometric state X_l x (X_l)^hbar_l' + z0; X_l = {U y : A y.y <= hbar} in the orthonormal basis U of l

    Functions
    ~~~~~~~~~
    standard(n, hbar) - static; B_X(sqrt(hbar)) x B_P(sqrt(hbar))
    fromSymplectic(S, center, hbar) - static; S(B_X x B_P) + center
    dualShape(self) - shape of (X_l)^hbar_l' in the orthonormal basis of l'
    transportedPair(self) - shapes of the two factors after transport to the canonical frame
    canonicalForm(self) - S with state = S(B_X x B_P) + z0, O(n) gauge fixed by a polar decomposition
    bodyMatrix(self) - U A^-1 U^T, basis-free description of X_l
    dualBodyMatrix(self) - the same for the l' factor
    isClose(self, other, tol) - equality of the product sets

    Attributes
    ~~~~~~~~~~
    frame (LagrangianFrame type); supporting frame
    shapeX (numpy.ndarray type); A, n x n symmetric positive definite
    center (numpy.ndarray type); z0
    hbar (float type); Planck constant in use
    n (int type); degrees of freedom
    """

    def __init__(self, frame, shapeX, center = None, hbar = 1.0):
        self.frame = frame
        self.n = frame.n
        self.hbar = float(hbar)
        self.shapeX = BlobEllipsoid.Ellipsoid(shapeX, None, hbar).Q
        if self.shapeX.shape[0] != self.n:
            raise BlobErrors.DimensionError("shapeX is {0}x{0}, frame has n = {1}".format(self.shapeX.shape[0], self.n))
        self.center = np.zeros(2 * self.n) if center is None else np.array(center, dtype = float).reshape(-1)
        if self.center.shape[0] != 2 * self.n:
            raise BlobErrors.DimensionError("center has length {0}, expected {1}".format(self.center.shape[0], 2 * self.n))

    @staticmethod
    def standard(n, hbar = 1.0):
        return GeometricState(LagrangianFrame.canonical(n), np.eye(n), None, hbar)

    @staticmethod
    def fromSymplectic(S, center = None, hbar = 1.0):
        state = act(S, GeometricState.standard(BlobSymplectic.halfDimension(np.shape(S)[0]), hbar))
        if center is not None:
            state.center = np.array(center, dtype = float).reshape(-1)
        return state

    def dualShape(self):
        return lagrangianPolarDual(self.shapeX, self.frame, self.hbar).Q

    def transportedPair(self):
        return self.shapeX, np.linalg.inv(self.shapeX)

    def canonicalForm(self):
        try:
            n = self.n
            root, _ = BlobSymplectic.sqrtPD(self.shapeX)
            S = frameTransport(self.frame) @ BlobSymplectic.generatorML(root)
            T = S[:n, :n]
            singular = np.linalg.svd(T, compute_uv = False)
            if singular[-1] > GAUGE_TOL * singular[0]:
                # T = P W; right-multiplying by M_W makes the x-block symmetric positive definite
                W, _ = scipy.linalg.polar(T, side = "left")
                S = S @ BlobSymplectic.generatorML(W)
            return S
        except Exception as err:
            lagrangian_logger.error("{0}:GeometricState.canonicalForm():{1}".format(str(datetime.datetime.now()), str(err)))
            raise

    def bodyMatrix(self):
        U = self.frame.ell.basis
        return U @ np.linalg.inv(self.shapeX) @ U.T

    def dualBodyMatrix(self):
        V = self.frame.ellPrime.basis
        return V @ np.linalg.inv(self.dualShape()) @ V.T

    def isClose(self, other, tol = STATE_TOL):
        checks = [np.max(np.abs(self.frame.ell.projector() - other.frame.ell.projector())),
                  np.max(np.abs(self.frame.ellPrime.projector() - other.frame.ellPrime.projector())),
                  np.max(np.abs(self.bodyMatrix() - other.bodyMatrix())) / max(1.0, np.max(np.abs(self.bodyMatrix()))),
                  np.max(np.abs(self.dualBodyMatrix() - other.dualBodyMatrix())) / max(1.0, np.max(np.abs(self.dualBodyMatrix()))),
                  np.max(np.abs(self.center - other.center)),
                  abs(self.hbar - other.hbar)]
        return bool(max(checks) <= tol)

class MixedGeometricState(GeometricState):
    """
    MixedGeometricState
    ~~~~~~~~~~~~~~~~~~~
    X_l x P_l' + z0 where the ellipsoid P_l' contains the Lagrangian polar dual of X_l

    Functions
    ~~~~~~~~~
    transportedPair(self) - (A, C^-T shapeP C^-1), the factors in canonical coordinates
    isPure(self, tol) - P_l' equals the Lagrangian polar dual of X_l
    purity(self) - purity of the covariance matrix read off the John ellipsoid

    Attributes
    ~~~~~~~~~~
    shapeP (numpy.ndarray type); shape of P_l' in the orthonormal basis of l'
    """

    def __init__(self, frame, shapeX, shapeP, center = None, hbar = 1.0, tol = 1e-9):
        GeometricState.__init__(self, frame, shapeX, center, hbar)
        self.shapeP = BlobEllipsoid.Ellipsoid(shapeP, None, hbar).Q
        if self.shapeP.shape[0] != self.n:
            raise BlobErrors.DimensionError("shapeP is {0}x{0}, frame has n = {1}".format(self.shapeP.shape[0], self.n))
        dual = BlobEllipsoid.Ellipsoid(self.dualShape(), None, hbar)
        if not BlobEllipsoid.contains(dual, BlobEllipsoid.Ellipsoid(self.shapeP, None, hbar), tol):
            raise BlobErrors.ContainmentError("momentum ellipsoid does not contain the Lagrangian polar dual of X")

    def transportedPair(self):
        C_inv = np.linalg.inv(self.frame.pairing())
        return self.shapeX, C_inv.T @ self.shapeP @ C_inv

    def isPure(self, tol = STATE_TOL):
        dual = self.dualShape()
        return bool(np.max(np.abs(dual - self.shapeP)) <= tol * max(1.0, np.max(np.abs(dual))))

    def dualBodyMatrix(self):
        V = self.frame.ellPrime.basis
        return V @ np.linalg.inv(self.shapeP) @ V.T

    def canonicalForm(self):
        raise BlobErrors.UnsupportedError("mixed geometric states have no canonical symplectic form")

    def purity(self):
        john, _ = johnOfState(self)
        return BlobAdmissibility.purity(BlobAdmissibility.CovarianceMatrix(0.5 * self.hbar * np.linalg.inv(john.Q), self.hbar))

def act(S, state, tol = BlobSymplectic.SP_TOL):
    """State with frame (S l, S l'), body S(X_l) and center S z0; tol bounds the isotropy of the image planes."""
    try:
        S = BlobSymplectic.asSquare(S, "S")
        if S.shape[0] != 2 * state.n:
            raise BlobErrors.DimensionError("S is {0}x{0}, state lives in dimension {1}".format(S.shape[0], 2 * state.n))
        ell_basis, shapeX = transportPlane(S, state.frame.ell.basis, state.shapeX)
        mixed = isinstance(state, MixedGeometricState)
        prime_basis, shapeP = transportPlane(S, state.frame.ellPrime.basis, state.shapeP if mixed else np.eye(state.n))
        frame = LagrangianFrame(LagrangianPlane(ell_basis, tol), LagrangianPlane(prime_basis, tol))
        if mixed:
            return MixedGeometricState(frame, shapeX, shapeP, S @ state.center, state.hbar)
        return GeometricState(frame, shapeX, S @ state.center, state.hbar)
    except Exception as err:
        lagrangian_logger.error("{0}:act():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def actAffine(S, translation, state, tol = BlobSymplectic.SP_TOL):
    try:
        moved = act(S, state, tol)
        moved.center = moved.center + np.asarray(translation, dtype = float)
        return moved
    except Exception as err:
        lagrangian_logger.error("{0}:actAffine():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def johnOfState(state):
    """
    Returns (John ellipsoid, admissible). For a pure state this is
    S(B^2n(sqrt(hbar))) + z0 with S canonical, a quantum blob. For a mixed
    state the pair is transported to the canonical frame, johnOfProduct is
    applied and the result mapped back.
    """
    try:
        S_F = frameTransport(state.frame)
        A, P = state.transportedPair()
        hbar = state.hbar
        john = BlobEllipsoid.johnOfProduct(BlobEllipsoid.Ellipsoid(A, None, hbar), BlobEllipsoid.Ellipsoid(P, None, hbar))
        S_inv = np.linalg.inv(S_F)
        Q = S_inv.T @ john.Q @ S_inv
        ellipsoid = BlobEllipsoid.Ellipsoid(0.5 * (Q + Q.T), state.center, hbar)
        admissible, _ = BlobAdmissibility.admissibleBySpectrum(ellipsoid)
        return ellipsoid, admissible
    except Exception as err:
        lagrangian_logger.error("{0}:johnOfState():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

class GaussianState():
    """
    GaussianState
    ~~~~~~~~~~~~~
    Displaced generalized Gaussian exp(-(A + iB)(x - x0).(x - x0)/2hbar + i p0.x/hbar), normalized, modulo phase

    Functions
    ~~~~~~~~~
    isClose(self, other, tol) - blockwise comparison of (A, B, z0, hbar)

    Attributes
    ~~~~~~~~~~
    A (numpy.ndarray type); symmetric positive definite
    B (numpy.ndarray type); symmetric
    center (numpy.ndarray type); z0 = (x0, p0)
    hbar (float type); Planck constant in use
    n (int type); degrees of freedom
    """

    def __init__(self, A, B = None, center = None, hbar = 1.0):
        A = BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(A, "A"))
        BlobSymplectic.sqrtPD(A)
        self.n = A.shape[0]
        B = np.zeros((self.n, self.n)) if B is None else BlobSymplectic.checkSymmetric(BlobSymplectic.asSquare(B, "B"))
        if B.shape != A.shape:
            raise BlobErrors.DimensionError("A and B have shapes {0} and {1}".format(A.shape, B.shape))
        if not hbar > 0:
            raise BlobErrors.DomainError("hbar must be positive, got {0}".format(hbar))
        self.A = A
        self.B = B
        self.hbar = float(hbar)
        self.center = np.zeros(2 * self.n) if center is None else np.array(center, dtype = float).reshape(-1)
        if self.center.shape[0] != 2 * self.n:
            raise BlobErrors.DimensionError("center has length {0}, expected {1}".format(self.center.shape[0], 2 * self.n))

    def isClose(self, other, tol = STATE_TOL):
        scale = max(1.0, np.max(np.abs(self.A)), np.max(np.abs(self.B)))
        checks = [np.max(np.abs(self.A - other.A)) / scale,
                  np.max(np.abs(self.B - other.B)) / scale,
                  np.max(np.abs(self.center - other.center)),
                  abs(self.hbar - other.hbar)]
        return bool(max(checks) <= tol)

def wignerMatrix(g):
    A_inv = np.linalg.inv(g.A)
    G = np.block([[g.A + g.B @ A_inv @ g.B, g.B @ A_inv], [A_inv @ g.B, A_inv]])
    return 0.5 * (G + G.T)

def gaussianFromWigner(G, center = None, hbar = 1.0, tol = WIGNER_TOL):
    """Inverse of wignerMatrix: A = G_pp^-1, B = G_xp G_pp^-1; G must be symmetric, positive definite and symplectic."""
    try:
        G = BlobSymplectic.asSquare(G, "G")
        n = BlobSymplectic.halfDimension(G.shape[0])
        scale = max(1.0, np.max(np.abs(G)))
        if np.max(np.abs(G - G.T)) > tol * scale:
            raise BlobErrors.InvalidWignerError("Wigner matrix is not symmetric")
        G = 0.5 * (G + G.T)
        if np.linalg.eigvalsh(G)[0] <= 0:
            raise BlobErrors.InvalidWignerError("Wigner matrix is not positive definite")
        residual = BlobSymplectic.symplecticResidual(G)
        if residual > tol * scale ** 2:
            raise BlobErrors.InvalidWignerError("Wigner matrix is not symplectic (residual {0:.3e})".format(residual))
        det = np.linalg.det(G)
        if abs(det - 1.0) > DET_TOL:
            raise BlobErrors.InvalidWignerError("Wigner matrix has determinant {0:.12g}".format(det))
        A = np.linalg.inv(G[n:, n:])
        B = G[:n, n:] @ A
        if np.max(np.abs(B - B.T)) > tol * scale ** 2:
            raise BlobErrors.InvalidWignerError("recovered B is not symmetric")
        return GaussianState(0.5 * (A + A.T), 0.5 * (B + B.T), center, hbar)
    except Exception as err:
        lagrangian_logger.error("{0}:gaussianFromWigner():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def toGaussian(state):
    try:
        if isinstance(state, MixedGeometricState):
            raise BlobErrors.UnsupportedError("only pure geometric states correspond to Gaussians")
        S = state.canonicalForm()
        G = np.linalg.inv(S @ S.T)
        return gaussianFromWigner(0.5 * (G + G.T), state.center, state.hbar)
    except Exception as err:
        lagrangian_logger.error("{0}:toGaussian():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def gaussianSymplectic(g):
    """S_AB = [[A^-1/2, 0], [-B A^-1/2, A^1/2]] = V_-P M_(A^1/2) with P = -B."""
    root, inv_root = BlobSymplectic.sqrtPD(g.A)
    return np.block([[inv_root, np.zeros((g.n, g.n))], [-g.B @ inv_root, root]])

def fromGaussian(g):
    try:
        return GeometricState.fromSymplectic(gaussianSymplectic(g), g.center, g.hbar)
    except Exception as err:
        lagrangian_logger.error("{0}:fromGaussian():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def metaplecticAct(S, g, tol = 1e-6):
    try:
        S = BlobSymplectic.asSquare(S, "S")
        S_inv = np.linalg.inv(S)
        G = S_inv.T @ wignerMatrix(g) @ S_inv
        return gaussianFromWigner(0.5 * (G + G.T), S @ g.center, g.hbar, tol)
    except Exception as err:
        lagrangian_logger.error("{0}:metaplecticAct():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def displace(z0, g):
    return GaussianState(g.A, g.B, g.center + np.asarray(z0, dtype = float), g.hbar)

def covarianceOfGaussian(g):
    return BlobAdmissibility.CovarianceMatrix(0.5 * g.hbar * np.linalg.inv(wignerMatrix(g)), g.hbar)

def marginalsGaussian(g):
    """(Sigma_XX, Sigma_PP) = ((hbar/2) A^-1, (hbar/2)(A + B A^-1 B))."""
    A_inv = np.linalg.inv(g.A)
    return 0.5 * g.hbar * A_inv, 0.5 * g.hbar * (g.A + g.B @ A_inv @ g.B)

def wignerDensity(g, z):
    Z = np.atleast_2d(np.asarray(z, dtype = float)) - g.center
    quad_form = np.einsum("ij,jk,ik->i", Z, wignerMatrix(g), Z)
    values = (math.pi * g.hbar) ** (-g.n) * np.exp(-quad_form / g.hbar)
    return values if np.ndim(z) > 1 else float(values[0])

def positionDensity(g, x):
    X = np.atleast_2d(np.asarray(x, dtype = float)) - g.center[:g.n]
    quad_form = np.einsum("ij,jk,ik->i", X, g.A, X)
    values = (math.pi * g.hbar) ** (-0.5 * g.n) * math.sqrt(np.linalg.det(g.A)) * np.exp(-quad_form / g.hbar)
    return values if np.ndim(x) > 1 else float(values[0])

def marginalQuadratureCheck(g, xs, width = 12.0):
    """Max over xs of |integral of W(x, p) dp - |psi(x)|^2|; p is integrated over width standard deviations around its conditional mean."""
    try:
        if g.n != 1:
            raise BlobErrors.DimensionError("quadrature check is implemented for n = 1")
        G = wignerMatrix(g)
        spread = math.sqrt(0.5 * g.hbar / G[1, 1])
        worst = 0.0
        for x in np.atleast_1d(np.asarray(xs, dtype = float)):
            dx = x - g.center[0]
            p_mean = g.center[1] - G[0, 1] / G[1, 1] * dx
            integral, _ = quad(lambda p: wignerDensity(g, np.array([x, p])), p_mean - width * spread, p_mean + width * spread, epsabs = 1e-13, epsrel = 1e-11, limit = 200)
            worst = max(worst, abs(integral - positionDensity(g, np.array([x]))))
        return float(worst)
    except Exception as err:
        lagrangian_logger.error("{0}:marginalQuadratureCheck():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
