import math

import numpy as np
import pytest

import BlobAdmissibility
import BlobErrors
import BlobLagrangian
import BlobSymplectic
from BlobLagrangian import GaussianState, GeometricState, LagrangianFrame, LagrangianPlane, MixedGeometricState
from conftest import randomPD, randomSymmetric

def randomFrame(random_symplectic, n):
    S = random_symplectic(n)
    return LagrangianFrame(S[:, :n], S[:, n:])

class TestFrames:
    def test_plane_must_be_isotropic(self):
        eye = np.eye(4)
        with pytest.raises(BlobErrors.IsotropyError):
            LagrangianPlane(eye[:, [0, 2]])

    def test_plane_needs_n_vectors(self):
        with pytest.raises(BlobErrors.RankError):
            LagrangianPlane(np.eye(4)[:, :1])

    def test_frame_must_be_transversal(self):
        eye = np.eye(4)
        with pytest.raises(BlobErrors.TransversalityError):
            LagrangianFrame(eye[:, :2], eye[:, [0, 3]])

    def test_frame_transport(self, random_symplectic):
        for n in (1, 2, 3):
            frame = randomFrame(random_symplectic, n)
            S = BlobLagrangian.frameTransport(frame)
            assert BlobSymplectic.isSymplectic(S, 1e-8)
            assert np.allclose(LagrangianPlane(S[:, :n]).projector(), frame.ell.projector(), atol = 1e-9)
            assert np.allclose(LagrangianPlane(S[:, n:]).projector(), frame.ellPrime.projector(), atol = 1e-9)

    def test_canonical_frame_is_fixed(self):
        assert np.allclose(BlobLagrangian.frameTransport(LagrangianFrame.canonical(2)), np.eye(4))

class TestPolarDual:
    def test_canonical_frame_gives_inverse(self, rng):
        A = randomPD(rng, 3)
        dual = BlobLagrangian.lagrangianPolarDual(A, LagrangianFrame.canonical(3), 2.0)
        assert np.allclose(dual.Q, np.linalg.inv(A))
        assert dual.hbar == 2.0

    def test_support_function(self, rng, random_symplectic):
        """max of sigma(z, z') over X is hbar exactly on the boundary of the dual."""
        frame = randomFrame(random_symplectic, 2)
        A = randomPD(rng, 2)
        hbar = 0.5
        dual = BlobLagrangian.lagrangianPolarDual(A, frame, hbar)
        U, V = frame.ell.basis, frame.ellPrime.basis
        J = BlobSymplectic.standardJ(2)
        for _ in range(5):
            y = rng.standard_normal(2)
            y *= math.sqrt(hbar / (y @ dual.Q @ y))
            # sigma(Ux, Vy) = -x.Cy, maximized over Ax.x <= hbar
            x = np.linalg.solve(A, frame.pairing() @ y)
            x *= -math.sqrt(hbar / (x @ A @ x))
            assert (J @ U @ x) @ (V @ y) == pytest.approx(hbar, rel = 1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(BlobErrors.DimensionError):
            BlobLagrangian.lagrangianPolarDual(np.eye(2), LagrangianFrame.canonical(3))

class TestGeometricState:
    def test_group_action(self, random_symplectic):
        S1, S2 = random_symplectic(2), random_symplectic(2)
        state = GeometricState.standard(2, 1.5)
        once = BlobLagrangian.act(S1 @ S2, state)
        twice = BlobLagrangian.act(S1, BlobLagrangian.act(S2, state))
        assert once.isClose(twice, 1e-8)

    def test_action_carries_the_dual(self, rng, random_symplectic):
        state = GeometricState(randomFrame(random_symplectic, 2), randomPD(rng, 2), rng.standard_normal(4))
        S = random_symplectic(2)
        moved = BlobLagrangian.act(S, state)
        assert np.allclose(moved.bodyMatrix(), S @ state.bodyMatrix() @ S.T, atol = 1e-9)
        assert np.allclose(moved.dualBodyMatrix(), S @ state.dualBodyMatrix() @ S.T, atol = 1e-9)
        assert np.allclose(moved.center, S @ state.center)

    def test_affine_action(self, random_symplectic):
        S = random_symplectic(1)
        moved = BlobLagrangian.actAffine(S, [1.0, -2.0], GeometricState.standard(1))
        assert np.allclose(moved.center, [1.0, -2.0])

    def test_canonical_form(self, rng, random_symplectic):
        n = 2
        state = GeometricState(randomFrame(random_symplectic, n), randomPD(rng, n), None, 0.7)
        S = state.canonicalForm()
        assert BlobSymplectic.isSymplectic(S, 1e-8)
        assert GeometricState.fromSymplectic(S, hbar = 0.7).isClose(state, 1e-8)
        T = S[:n, :n]
        assert np.allclose(T, T.T, atol = 1e-9)
        assert np.all(np.linalg.eigvalsh(0.5 * (T + T.T)) > 0)

    def test_john_ellipsoid_is_a_quantum_blob(self, rng, random_symplectic):
        state = GeometricState(randomFrame(random_symplectic, 2), randomPD(rng, 2))
        john, admissible = BlobLagrangian.johnOfState(state)
        assert admissible
        assert BlobAdmissibility.isQuantumBlob(john, 1e-8)

    def test_john_of_standard_state_is_the_ball(self):
        john, _ = BlobLagrangian.johnOfState(GeometricState.standard(2, 3.0))
        assert np.allclose(john.Q, np.eye(4))
        assert john.hbar == 3.0

    def test_center_length(self):
        with pytest.raises(BlobErrors.DimensionError):
            GeometricState(LagrangianFrame.canonical(1), np.eye(1), [0.0, 0.0, 0.0])

class TestMixedState:
    def test_momentum_ellipsoid_must_contain_the_dual(self):
        with pytest.raises(BlobErrors.ContainmentError):
            MixedGeometricState(LagrangianFrame.canonical(1), np.eye(1), 4.0 * np.eye(1))

    def test_purity(self):
        frame = LagrangianFrame.canonical(1)
        assert MixedGeometricState(frame, np.eye(1), 0.25 * np.eye(1)).purity() == pytest.approx(0.5)
        pure = MixedGeometricState(frame, np.eye(1), np.eye(1))
        assert pure.isPure()
        assert pure.purity() == pytest.approx(1.0)

    def test_action_keeps_it_mixed(self, random_symplectic):
        state = MixedGeometricState(LagrangianFrame.canonical(2), np.eye(2), 0.5 * np.eye(2))
        moved = BlobLagrangian.act(random_symplectic(2), state)
        assert isinstance(moved, MixedGeometricState)
        assert moved.purity() == pytest.approx(state.purity(), rel = 1e-8)

    def test_no_canonical_form(self):
        state = MixedGeometricState(LagrangianFrame.canonical(1), np.eye(1), 0.5 * np.eye(1))
        with pytest.raises(BlobErrors.UnsupportedError):
            state.canonicalForm()
        with pytest.raises(BlobErrors.UnsupportedError):
            BlobLagrangian.toGaussian(state)

class TestGaussians:
    def test_wigner_matrix_is_symplectic_with_unit_determinant(self, rng):
        g = GaussianState(randomPD(rng, 3), randomSymmetric(rng, 3))
        G = BlobLagrangian.wignerMatrix(g)
        assert BlobSymplectic.isSymplectic(G, 1e-8)
        assert np.linalg.det(G) == pytest.approx(1.0, rel = 1e-9)

    def test_wigner_blocks_recover_the_gaussian(self, rng):
        g = GaussianState(randomPD(rng, 2), randomSymmetric(rng, 2), rng.standard_normal(4), 0.3)
        back = BlobLagrangian.gaussianFromWigner(BlobLagrangian.wignerMatrix(g), g.center, g.hbar)
        assert back.isClose(g, 1e-9)

    def test_invalid_wigner_matrix(self):
        with pytest.raises(BlobErrors.InvalidWignerError):
            BlobLagrangian.gaussianFromWigner(2.0 * np.eye(2))
        with pytest.raises(BlobErrors.InvalidWignerError):
            BlobLagrangian.gaussianFromWigner(-np.eye(2))

    def test_gaussian_symplectic_reproduces_the_wigner_matrix(self, rng):
        g = GaussianState(randomPD(rng, 2), randomSymmetric(rng, 2))
        S = BlobLagrangian.gaussianSymplectic(g)
        assert BlobSymplectic.isSymplectic(S, 1e-9)
        assert np.allclose(np.linalg.inv(S @ S.T), BlobLagrangian.wignerMatrix(g), atol = 1e-9)

    def test_gaussian_roundtrip(self, rng):
        g = GaussianState(randomPD(rng, 2), randomSymmetric(rng, 2), rng.standard_normal(4), 1.7)
        assert BlobLagrangian.toGaussian(BlobLagrangian.fromGaussian(g)).isClose(g, 1e-8)

    def test_geometric_roundtrip_on_the_momentum_plane(self, rng):
        state = GeometricState(LagrangianFrame.canonical(2), randomPD(rng, 2), rng.standard_normal(4))
        back = BlobLagrangian.fromGaussian(BlobLagrangian.toGaussian(state))
        assert back.isClose(state, 1e-8)

    def test_geometric_roundtrip_forgets_the_second_plane(self, random_symplectic):
        state = GeometricState.fromSymplectic(random_symplectic(2))
        g = BlobLagrangian.toGaussian(state)
        back = BlobLagrangian.fromGaussian(g)
        assert np.allclose(back.frame.ellPrime.projector(), LagrangianFrame.canonical(2).ellPrime.projector(), atol = 1e-9)
        assert BlobLagrangian.toGaussian(back).isClose(g, 1e-8)

    def test_free_particle(self):
        t = 0.8
        S = np.array([[1.0, t], [0.0, 1.0]])
        moved = BlobLagrangian.metaplecticAct(S, GaussianState(np.eye(1)))
        assert moved.A[0, 0] == pytest.approx(1.0 / (1.0 + t * t))
        assert moved.B[0, 0] == pytest.approx(-t / (1.0 + t * t))

    def test_metaplectic_action_intertwines(self, rng, random_symplectic):
        g = GaussianState(randomPD(rng, 2), randomSymmetric(rng, 2), rng.standard_normal(4))
        S = random_symplectic(2)
        via_states = BlobLagrangian.toGaussian(BlobLagrangian.act(S, BlobLagrangian.fromGaussian(g)))
        assert via_states.isClose(BlobLagrangian.metaplecticAct(S, g), 1e-8)

    def test_marginals_match_covariance_blocks(self, rng):
        g = GaussianState(randomPD(rng, 2), randomSymmetric(rng, 2), None, 0.4)
        cov = BlobLagrangian.covarianceOfGaussian(g)
        xx, pp = BlobLagrangian.marginalsGaussian(g)
        assert np.allclose(cov.xx(), xx)
        assert np.allclose(cov.pp(), pp)
        assert BlobAdmissibility.purity(cov) == pytest.approx(1.0)

    def test_position_marginal_by_quadrature(self):
        g = GaussianState(np.array([[2.0]]), np.array([[0.7]]), [0.3, -0.5], 0.8)
        assert BlobLagrangian.marginalQuadratureCheck(g, np.linspace(-2.0, 2.0, 9)) <= 1e-6

    @pytest.mark.parametrize("seed", range(10))
    def test_position_marginal_by_quadrature_on_random_states(self, seed):
        rng = np.random.default_rng(seed)
        hbar = rng.uniform(0.3, 2.0)
        g = GaussianState(randomPD(rng, 1, spread = 0.7), randomSymmetric(rng, 1, scale = 2.0), rng.standard_normal(2), hbar)
        width = math.sqrt(0.5 * hbar / g.A[0, 0])
        xs = g.center[0] + width * np.linspace(-3.0, 3.0, 7)
        assert BlobLagrangian.marginalQuadratureCheck(g, xs) <= 1e-6

    def test_quadrature_check_is_one_dimensional(self):
        with pytest.raises(BlobErrors.DimensionError):
            BlobLagrangian.marginalQuadratureCheck(GaussianState(np.eye(2)), [0.0])
