import math

import numpy as np
import pytest

import BlobCapacity
import BlobEllipsoid
import BlobErrors
from BlobEllipsoid import Ellipsoid
from BlobLagrangian import GeometricState, LagrangianFrame, MixedGeometricState
from conftest import randomPD

def largestScaleInside(D, P, lo = 1e-3, hi = 1e3, iterations = 200):
    """Bisection for the largest lambda with lambda D inside P."""
    for _ in range(iterations):
        mid = math.sqrt(lo * hi)
        if BlobEllipsoid.contains(D.scaled(mid), P, 0.0):
            lo = mid
        else:
            hi = mid
    return lo

class TestEllipsoidCapacity:
    @pytest.mark.parametrize("hbar", [1.0, 0.5, 2.0])
    def test_ball(self, hbar):
        result = BlobCapacity.capacityEllipsoid(Ellipsoid(np.eye(4), hbar = hbar))
        assert result.value == pytest.approx(math.pi * hbar)
        assert result.kind == "ellipsoid"

    def test_diag_4_1(self):
        E = Ellipsoid(np.diag([4.0, 1.0]))
        assert BlobCapacity.capacityEllipsoid(E).value == pytest.approx(math.pi / 2.0)
        assert BlobCapacity.capacityDual(E).value == pytest.approx(2.0 * math.pi)

    def test_conformality(self, rng):
        E = Ellipsoid(randomPD(rng, 4))
        assert BlobCapacity.capacityEllipsoid(E.scaled(3.0)).value == pytest.approx(9.0 * BlobCapacity.capacityEllipsoid(E).value)

    def test_symplectic_invariance(self, rng, random_symplectic):
        E = Ellipsoid(randomPD(rng, 6))
        moved = E.image(random_symplectic(3))
        assert BlobCapacity.capacityEllipsoid(moved).value == pytest.approx(BlobCapacity.capacityEllipsoid(E).value, rel = 1e-8)

    def test_monotonicity(self, rng):
        E = Ellipsoid(randomPD(rng, 4))
        bigger = Ellipsoid(E.Q - 0.1 * np.linalg.eigvalsh(E.Q)[0] * np.eye(4))
        assert BlobCapacity.capacityEllipsoid(bigger).value >= BlobCapacity.capacityEllipsoid(E).value

    def test_product_bound(self, rng):
        for _ in range(20):
            bound = BlobCapacity.capacityProductBound(Ellipsoid(randomPD(rng, 4), hbar = 1.3))
            assert bound["holds"]
            assert bound["ratio"] <= 1.0 + 1e-9

    def test_product_bound_is_saturated_by_balls(self):
        bound = BlobCapacity.capacityProductBound(Ellipsoid(2.0 * np.eye(4)))
        assert bound["round"]
        assert bound["ratio"] == pytest.approx(1.0)

    def test_result_dict(self):
        payload = BlobCapacity.capacityEllipsoid(Ellipsoid(np.eye(2))).toDict()
        assert set(payload) == {"capacity", "kind", "witness"}
        assert payload["witness"]["lambda_max"] == pytest.approx(1.0)

class TestProductCapacity:
    def test_balls(self):
        result = BlobCapacity.cmaxProduct(Ellipsoid(np.eye(2), hbar = 1.5), Ellipsoid(np.eye(2), hbar = 1.5))
        assert result.value == pytest.approx(6.0)
        assert result.witness["lambda"] == pytest.approx(1.0)

    def test_larger_momentum_ball(self):
        result = BlobCapacity.cmaxProduct(Ellipsoid(np.eye(2)), Ellipsoid(0.25 * np.eye(2)))
        assert result.value == pytest.approx(8.0)

    def test_matches_bisection(self, rng):
        for _ in range(5):
            X, P = Ellipsoid(randomPD(rng, 3)), Ellipsoid(randomPD(rng, 3))
            result = BlobCapacity.cmaxProduct(X, P)
            assert result.witness["lambda"] == pytest.approx(largestScaleInside(BlobEllipsoid.polarDual(X), P), rel = 1e-8)

    def test_dimension_mismatch(self):
        with pytest.raises(BlobErrors.DimensionError):
            BlobCapacity.cmaxProduct(Ellipsoid(np.eye(2)), Ellipsoid(np.eye(3)))

class TestStateCapacities:
    @pytest.mark.parametrize("hbar", [1.0, 0.25])
    def test_pure_state_is_4_hbar(self, random_symplectic, hbar):
        for k in range(100):
            state = GeometricState.fromSymplectic(random_symplectic(1 + k % 3), hbar = hbar)
            result = BlobCapacity.stateCapacities(state)
            assert result.value == pytest.approx(4.0 * hbar, rel = 1e-8)
            assert result.witness["c_min_lin"] == pytest.approx(math.pi * hbar, rel = 1e-8)
            assert result.witness["john_admissible"]

    def test_mixed_state(self):
        state = MixedGeometricState(LagrangianFrame.canonical(1), np.eye(1), 0.25 * np.eye(1))
        result = BlobCapacity.stateCapacities(state)
        assert result.value == pytest.approx(8.0)
        assert result.witness["ratio_to_4hbar"] == pytest.approx(2.0)

class TestOrbitAction:
    def test_diag_4_1(self):
        result = BlobCapacity.hzOrbitAction(Ellipsoid(np.diag([4.0, 1.0])))
        assert result.value == pytest.approx(math.pi / 2.0, rel = 1e-7)
        assert result.witness["period"] == pytest.approx(math.pi)
        assert result.witness["closure"] < 1e-7

    def test_matches_closed_form(self, rng):
        E = Ellipsoid(randomPD(rng, 4, spread = 0.3), hbar = 0.8)
        result = BlobCapacity.hzOrbitAction(E)
        assert result.value == pytest.approx(BlobCapacity.capacityEllipsoid(E).value, rel = 1e-7)
