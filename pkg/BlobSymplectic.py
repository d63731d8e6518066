"""
:mod: 'BlobSymplectic'
~~~~~~~~~~~~~~~~~~~~~~

..  py:module:: BlobSymplectic
    :copyright: Copyright BitWorks LLC, All rights reserved.
    :license: MIT
    :synopsis: Dense symmetric and symplectic linear algebra on (R^2n, sigma) in (x_1..x_n, p_1..p_n) ordering
    :description: Contains the following classes:

        WilliamsonForm - symplectic diagonalizer and symplectic spectrum of a positive definite matrix

                  Contains the following functions:

        asSquare - coerces input to a square float matrix
        checkSymmetric - validates and symmetrizes a matrix
        halfDimension - n for an even ambient dimension 2n
        sqrtPD - symmetric square root and inverse square root of a positive definite matrix
        standardJ - the standard symplectic matrix [[0, I], [-I, 0]]
        symplecticForm - sigma(z, w) = Jz.w
        isSymplectic - tests S^T J S = J
        isSymplecticRotation - tests membership of Sp(n) and O(2n)
        symplecticEigenvalues - symplectic spectrum, sorted non-increasing
        williamson - Williamson normal form M = S^T diag(L, L) S
        completeSymplecticBasis - completes an orthonormalized Lagrangian basis to a symplectic basis
        generatorML - M_L = [[L^-1, 0], [0, L^T]]
        generatorVP - V_-P = [[I, 0], [P, I]]
        preIwasawa - S = M_L V_-P U with L > 0, P symmetric and U a symplectic rotation
        randomSymplectic - random element of Sp(n) built from the three generator families
        symplecticReproject - one polar-type correction pulling a nearly symplectic matrix back to Sp(n)
"""

try:
    import sys, os, datetime, logging
    symplectic_logger = logging.getLogger()
    import numpy as np
    import scipy.linalg
    from scipy.stats import unitary_group
    # Tiered
    # from . import (BlobErrors)
    # Flat
    import BlobErrors
except Exception as err:
    symplectic_logger.error("{0}:BlobSymplectic import error:{1}".format(str(datetime.datetime.now()), str(err)))

SP_TOL = 1e-9
PD_TOL = 1e-12
SYM_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8
# symplectic residual above which williamson() gives up
WILLIAMSON_FAIL_TOL = 1e-6

class WilliamsonForm():
    """
    WilliamsonForm
    ~~~~~~~~~~~~~~
    Result of the Williamson diagonalization M = S^T D S, D = diag(spectrum, spectrum)

    Functions
    ~~~~~~~~~
    diagonal(self) - returns D

    Attributes
    ~~~~~~~~~~
    S (numpy.ndarray type); symplectic diagonalizer, 2n x 2n
    spectrum (numpy.ndarray type); symplectic eigenvalues, sorted non-increasing
    residual (float type); max-norm of S^T D S - M
    symplectic_residual (float type); max-norm of S^T J S - J
    """

    def __init__(self, S, spectrum, residual, symplectic_residual):
        self.S = S
        self.spectrum = spectrum
        self.residual = residual
        self.symplectic_residual = symplectic_residual

    def diagonal(self):
        return np.diag(np.concatenate([self.spectrum, self.spectrum]))

def asSquare(M, name = "matrix"):
    M = np.array(M, dtype = float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise BlobErrors.DimensionError("{0} must be a square matrix, got shape {1}".format(name, M.shape))
    return M

def checkSymmetric(M, sym_tol = SYM_TOL):
    scale = max(np.max(np.abs(M)), np.finfo(float).tiny)
    if np.max(np.abs(M - M.T)) > sym_tol * scale:
        raise BlobErrors.NotSymmetricError("matrix is not symmetric within {0}".format(sym_tol))
    return 0.5 * (M + M.T)

def halfDimension(d):
    if d < 2 or d % 2 != 0:
        raise BlobErrors.DimensionError("phase space dimension must be even and positive, got {0}".format(d))
    return d // 2

def sqrtPD(M, pd_tol = PD_TOL):
    """Returns (M^1/2, M^-1/2) for symmetric positive definite M."""
    w, V = np.linalg.eigh(M)
    scale = max(np.max(np.abs(w)), np.finfo(float).tiny)
    if w[0] <= pd_tol * scale:
        raise BlobErrors.NotPositiveDefiniteError("matrix is not positive definite (min eigenvalue {0:.6g})".format(w[0]))
    root = (V * np.sqrt(w)) @ V.T
    inv_root = (V / np.sqrt(w)) @ V.T
    return 0.5 * (root + root.T), 0.5 * (inv_root + inv_root.T)

def standardJ(n):
    if int(n) != n or n < 1:
        raise BlobErrors.DimensionError("n must be a positive integer, got {0}".format(n))
    n = int(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J

def symplecticForm(z, w):
    z = np.asarray(z, dtype = float)
    w = np.asarray(w, dtype = float)
    n = halfDimension(z.shape[0])
    # Jz = (p, -x)
    return float(z[n:] @ w[:n] - z[:n] @ w[n:])

def symplecticResidual(S):
    n = halfDimension(S.shape[0])
    J = standardJ(n)
    return float(np.max(np.abs(S.T @ J @ S - J)))

def isSymplectic(S, tol = SP_TOL):
    try:
        S = asSquare(S, "S")
        return symplecticResidual(S) <= tol
    except Exception as err:
        symplectic_logger.error("{0}:isSymplectic():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def isSymplecticRotation(U, tol = SP_TOL):
    U = asSquare(U, "U")
    orthogonal = np.max(np.abs(U.T @ U - np.eye(U.shape[0]))) <= tol
    return bool(orthogonal and isSymplectic(U, tol))

def symplecticEigenvalues(M, pd_tol = PD_TOL, sym_tol = SYM_TOL):
    """
    Symplectic spectrum of a positive definite 2n x 2n matrix, from the
    eigenvalues +-i*lambda_j of K = M^1/2 J M^1/2.
    """
    try:
        M = checkSymmetric(asSquare(M, "M"), sym_tol)
        n = halfDimension(M.shape[0])
        root, _ = sqrtPD(M, pd_tol)
        K = root @ standardJ(n) @ root
        # 1j*K is Hermitian for real skew K
        w = np.linalg.eigvalsh(1j * (K - K.T) / 2.0)
        return w[n:][::-1].copy()
    except Exception as err:
        symplectic_logger.error("{0}:symplecticEigenvalues():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def williamson(M, pd_tol = PD_TOL, sym_tol = SYM_TOL):
    """
    Williamson normal form of a symmetric positive definite matrix.

    The real Schur form of the skew matrix K = M^1/2 J M^1/2 is block
    diagonal, K = O T O^T. Each 2x2 block is turned so its positive entry is
    upper right, blocks are sorted by non-increasing symplectic eigenvalue and
    the columns regrouped from (x1, p1, x2, p2, ...) to (x.., p..), so that
    O^T K O = D^1/2 J D^1/2. Then S = D^-1/2 O^T M^1/2.

    :param M: symmetric positive definite 2n x 2n matrix
    :returns: WilliamsonForm
    :raises NotPositiveDefiniteError: if M is not positive definite
    :raises NumericalError: if the factorization fails its residual checks
    """
    try:
        M = checkSymmetric(asSquare(M, "M"), sym_tol)
        n = halfDimension(M.shape[0])
        root, _ = sqrtPD(M, pd_tol)
        K = root @ standardJ(n) @ root
        K = 0.5 * (K - K.T)
        T, O = scipy.linalg.schur(K, output = "real")
        O = O.copy()
        blocks = np.empty(n)
        for i in range(n):
            upper = T[2 * i, 2 * i + 1]
            if upper < 0:
                O[:, [2 * i, 2 * i + 1]] = O[:, [2 * i + 1, 2 * i]]
            blocks[i] = 0.5 * abs(T[2 * i, 2 * i + 1] - T[2 * i + 1, 2 * i])
        order = np.argsort(-blocks, kind = "stable")
        spectrum = blocks[order]
        O_xp = np.hstack([O[:, 2 * order], O[:, 2 * order + 1]])
        inv_half = 1.0 / np.sqrt(np.concatenate([spectrum, spectrum]))
        S = inv_half[:, None] * (O_xp.T @ root)
        D = np.diag(np.concatenate([spectrum, spectrum]))
        scale = np.max(np.abs(M))
        residual = float(np.max(np.abs(S.T @ D @ S - M)))
        sp_residual = symplecticResidual(S)
        if residual > RECONSTRUCTION_TOL * scale:
            raise BlobErrors.NumericalError("Williamson reconstruction residual {0:.3e} exceeds tolerance".format(residual), residual)
        if sp_residual > WILLIAMSON_FAIL_TOL:
            raise BlobErrors.NumericalError("Williamson symplectic residual {0:.3e} exceeds tolerance".format(sp_residual), sp_residual)
        symplectic_logger.debug("{0}:williamson():n={1} residual={2:.3e} symplectic_residual={3:.3e}".format(str(datetime.datetime.now()), n, residual, sp_residual))
        return WilliamsonForm(S, spectrum, residual, sp_residual)
    except Exception as err:
        symplectic_logger.error("{0}:williamson():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def orthonormalColumns(B, tol = 1e-10):
    """QR with a non-negative R diagonal; raises RankError when the columns are dependent."""
    B = np.array(B, dtype = float)
    if B.ndim == 1:
        B = B[:, None]
    if B.shape[1] > B.shape[0]:
        raise BlobErrors.RankError("{0} vectors cannot be independent in dimension {1}".format(B.shape[1], B.shape[0]))
    Q, R = np.linalg.qr(B)
    signs = np.where(np.diag(R) < 0, -1.0, 1.0)
    Q = Q * signs
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag.min() <= tol * max(diag.max(), np.finfo(float).tiny):
        raise BlobErrors.RankError("basis vectors are linearly dependent")
    return Q, R * signs[:, None]

def completeSymplecticBasis(vectors, tol = SP_TOL):
    """
    Completes a basis of a Lagrangian plane to a symplectic basis.

    The columns of vectors (2n x n) are orthonormalized to U; the result is
    S = [U, -JU], which is symplectic and orthogonal.
    """
    try:
        V = np.array(vectors, dtype = float)
        if V.ndim == 1:
            V = V[:, None]
        n = halfDimension(V.shape[0])
        if V.shape[1] != n:
            raise BlobErrors.DimensionError("a Lagrangian plane in dimension {0} needs {1} vectors, got {2}".format(2 * n, n, V.shape[1]))
        U, _ = orthonormalColumns(V)
        J = standardJ(n)
        isotropy = float(np.max(np.abs(U.T @ J @ U)))
        if isotropy > tol:
            raise BlobErrors.IsotropyError("vectors are not sigma-orthogonal (residual {0:.3e})".format(isotropy))
        return np.hstack([U, -J @ U])
    except Exception as err:
        symplectic_logger.error("{0}:completeSymplecticBasis():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def generatorML(L):
    try:
        L = asSquare(L, "L")
        n = L.shape[0]
        if np.linalg.cond(L) > 1.0 / np.finfo(float).eps:
            raise BlobErrors.DomainError("L is singular")
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = np.linalg.inv(L)
        out[n:, n:] = L.T
        return out
    except Exception as err:
        symplectic_logger.error("{0}:generatorML():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def generatorVP(P):
    try:
        P = checkSymmetric(asSquare(P, "P"))
        n = P.shape[0]
        out = np.eye(2 * n)
        out[n:, :n] = P
        return out
    except Exception as err:
        symplectic_logger.error("{0}:generatorVP():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def preIwasawa(S, tol = RECONSTRUCTION_TOL):
    """
    Factorization S = M_L V_-P U.

    From S S^T = M_L V_-P V_-P^T M_L^T: the xx block of S S^T is L^-2 and the
    xp block is L^-1 P L.
    """
    try:
        S = asSquare(S, "S")
        n = halfDimension(S.shape[0])
        G = S @ S.T
        G = 0.5 * (G + G.T)
        _, L = sqrtPD(G[:n, :n])
        L_inv = np.linalg.inv(L)
        P = L @ G[:n, n:] @ L_inv
        P = 0.5 * (P + P.T)
        U = generatorVP(-P) @ generatorML(L_inv) @ S
        residual = float(np.max(np.abs(generatorML(L) @ generatorVP(P) @ U - S)))
        if residual > tol * max(1.0, np.max(np.abs(S))):
            raise BlobErrors.NumericalError("pre-Iwasawa reconstruction residual {0:.3e}".format(residual), residual)
        return L, P, U
    except Exception as err:
        symplectic_logger.error("{0}:preIwasawa():{1}".format(str(datetime.datetime.now()), str(err)))
        raise

def randomUnitary(n, rng):
    """Haar-random element of U(n); unitary_group needs n >= 2, U(1) is a random phase."""
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(n, random_state = rng)

def realFormOfUnitary(W):
    X, Y = W.real, W.imag
    return np.block([[X, -Y], [Y, X]])

def randomSymplectic(n, rng, spread = 0.5):
    """Random S = M_L V_-P U; spread controls the log-eigenvalues of L and the size of P."""
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    L = (Q * np.exp(spread * rng.standard_normal(n))) @ Q.T
    P = spread * rng.standard_normal((n, n))
    P = 0.5 * (P + P.T)
    U = realFormOfUnitary(randomUnitary(n, rng))
    return generatorML(0.5 * (L + L.T)) @ generatorVP(P) @ U

def symplecticReproject(S):
    """S X^-1/2 with X = -J S^T J S; X = I exactly when S is symplectic."""
    try:
        n = halfDimension(S.shape[0])
        J = standardJ(n)
        X = -J @ S.T @ J @ S
        root = np.real(scipy.linalg.sqrtm(X))
        return S @ np.linalg.inv(root)
    except Exception as err:
        symplectic_logger.error("{0}:symplecticReproject():{1}".format(str(datetime.datetime.now()), str(err)))
        raise
