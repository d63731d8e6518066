import os

import numpy as np
import pytest

import BlobSymplectic

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")

def randomPD(rng, d, spread = 1.0):
    """Symmetric positive definite d x d matrix with log-eigenvalues ~ N(0, spread)."""
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    M = (Q * np.exp(spread * rng.standard_normal(d))) @ Q.T
    return 0.5 * (M + M.T)

def randomSymmetric(rng, d, scale = 1.0):
    M = scale * rng.standard_normal((d, d))
    return 0.5 * (M + M.T)

def diagonalWith(spectrum):
    """diag(spectrum, spectrum), a matrix with the given symplectic spectrum."""
    spectrum = np.asarray(spectrum, dtype = float)
    return np.diag(np.concatenate([spectrum, spectrum]))

@pytest.fixture
def rng():
    return np.random.default_rng(42)

@pytest.fixture
def random_symplectic(rng):
    def make(n, spread = 0.5):
        return BlobSymplectic.randomSymplectic(n, rng, spread)
    return make
