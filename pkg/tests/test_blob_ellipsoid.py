import math

import numpy as np
import pytest

import BlobErrors
import BlobEllipsoid
import BlobSymplectic
from BlobEllipsoid import Ellipsoid, Subspace
from conftest import randomPD

def test_shape_must_be_positive_definite():
    with pytest.raises(BlobErrors.NotPositiveDefiniteError):
        Ellipsoid(np.diag([1.0, 0.0]))

def test_center_length_is_checked():
    with pytest.raises(BlobErrors.DimensionError):
        Ellipsoid(np.eye(2), center = [1.0, 2.0, 3.0])

def test_contains_points_on_and_off_boundary():
    E = Ellipsoid(np.diag([4.0, 1.0]), hbar = 4.0)
    inside = E.containsPoints([[1.0, 0.0], [0.0, 2.0], [0.5, 0.5]])
    assert inside.tolist() == [True, True, True]
    assert not E.containsPoints([[1.1, 0.0]])[0]

def test_unit_disk_volume():
    assert BlobEllipsoid.volume(Ellipsoid(np.eye(2))) == pytest.approx(math.pi)

class TestPolarDuality:
    def test_involution(self, rng):
        E = Ellipsoid(randomPD(rng, 4), hbar = 2.0)
        twice = BlobEllipsoid.polarDual(BlobEllipsoid.polarDual(E))
        assert np.allclose(twice.Q, E.Q, rtol = 1e-10)
        assert twice.hbar == E.hbar

    def test_linear_covariance(self, rng):
        E = Ellipsoid(randomPD(rng, 4))
        A = rng.standard_normal((4, 4)) + 3.0 * np.eye(4)
        lhs = BlobEllipsoid.polarDual(E.image(A))
        rhs = BlobEllipsoid.polarDual(E).image(np.linalg.inv(A).T)
        assert np.allclose(lhs.Q, rhs.Q, rtol = 1e-8, atol = 1e-10)

    def test_symplectic_dual_commutes_with_symplectic_maps(self, rng, random_symplectic):
        E = Ellipsoid(randomPD(rng, 4))
        S = random_symplectic(2)
        lhs = BlobEllipsoid.symplecticPolarDual(E.image(S))
        rhs = BlobEllipsoid.symplecticPolarDual(E).image(S)
        assert np.allclose(lhs.Q, rhs.Q, rtol = 1e-8, atol = 1e-10)

    def test_ball_of_radius_sqrt_hbar_is_self_dual(self):
        E = Ellipsoid(np.eye(4), hbar = 3.0)
        assert np.allclose(BlobEllipsoid.polarDual(E).Q, E.Q)
        assert np.allclose(BlobEllipsoid.symplecticPolarDual(E).Q, E.Q)

    def test_off_center_is_rejected(self):
        with pytest.raises(BlobErrors.UnsupportedError):
            BlobEllipsoid.polarDual(Ellipsoid(np.eye(2), center = [0.1, 0.0]))

    @pytest.mark.parametrize("d", [2, 4, 6])
    def test_volume_product_is_ball_squared(self, rng, d):
        hbar = 0.7
        E = Ellipsoid(randomPD(rng, d), hbar = hbar)
        expected = (math.pi * hbar) ** d / math.gamma(0.5 * d + 1.0) ** 2
        assert BlobEllipsoid.mahlerVolume(E) == pytest.approx(expected, rel = 1e-10)

    def test_projection_and_section_are_dual(self, rng):
        E = Ellipsoid(randomPD(rng, 6))
        F = Subspace(rng.standard_normal((6, 2)))
        shadow_dual = BlobEllipsoid.polarDual(BlobEllipsoid.project(E, F))
        section_of_dual = BlobEllipsoid.intersectSubspace(BlobEllipsoid.polarDual(E), F)
        assert np.allclose(shadow_dual.Q, section_of_dual.Q, rtol = 1e-8)

    def test_subspace_ambient_mismatch(self):
        with pytest.raises(BlobErrors.DimensionError):
            BlobEllipsoid.project(Ellipsoid(np.eye(4)), Subspace(np.eye(6)[:, :2]))

class TestSections:
    def test_symplectic_plane_section_of_ball(self):
        E = Ellipsoid(np.eye(4), hbar = 2.0)
        F = Subspace(np.eye(4)[:, [0, 2]])
        assert BlobEllipsoid.planeSectionSymplecticArea(E, F) == pytest.approx(2.0 * math.pi)

    def test_null_plane_has_zero_action(self):
        E = Ellipsoid(np.eye(4))
        F = Subspace(np.eye(4)[:, [0, 1]])
        assert BlobEllipsoid.planeSectionArea(E, F) == pytest.approx(math.pi)
        assert BlobEllipsoid.planeSectionSymplecticArea(E, F) == pytest.approx(0.0, abs = 1e-14)

    def test_orientation_is_opposite_to_the_symplectic_form(self):
        E = Ellipsoid(np.eye(4), hbar = 0.5)
        u, v = np.eye(4)[:, 0], np.eye(4)[:, 2]
        assert BlobSymplectic.symplecticForm(u, v) == -1.0
        assert BlobEllipsoid.planeSectionSymplecticArea(E, Subspace(np.column_stack([u, v]))) == pytest.approx(0.5 * math.pi)
        assert BlobEllipsoid.planeSectionSymplecticArea(E, Subspace(np.column_stack([v, u]))) == pytest.approx(-0.5 * math.pi)

    def test_section_needs_a_plane(self):
        with pytest.raises(BlobErrors.DimensionError):
            BlobEllipsoid.planeSectionArea(Ellipsoid(np.eye(4)), Subspace(np.eye(4)[:, :3]))

class TestContainment:
    def test_direction(self):
        small = Ellipsoid(4.0 * np.eye(2))
        big = Ellipsoid(np.eye(2))
        assert BlobEllipsoid.contains(small, big)
        assert not BlobEllipsoid.contains(big, small)

    def test_compares_across_levels(self):
        # the same disk written at two levels
        assert BlobEllipsoid.contains(Ellipsoid(np.eye(2), hbar = 2.0), Ellipsoid(0.5 * np.eye(2)))
        assert BlobEllipsoid.contains(Ellipsoid(0.5 * np.eye(2)), Ellipsoid(np.eye(2), hbar = 2.0))

    def test_different_centers_unsupported(self):
        with pytest.raises(BlobErrors.UnsupportedError):
            BlobEllipsoid.containmentRatio(Ellipsoid(np.eye(2)), Ellipsoid(np.eye(2), center = [1.0, 0.0]))

    def test_duality_reverses_inclusion(self, rng):
        for k in range(100):
            d = 2 * (1 + k % 3)
            hbar = 0.5 + k % 4
            inner = Ellipsoid(randomPD(rng, d), hbar = hbar)
            R = randomPD(rng, d)
            R /= np.linalg.eigvalsh(R)[-1]
            Q_outer = inner.Q - rng.uniform(0.1, 0.9) * np.linalg.eigvalsh(inner.Q)[0] * R
            outer = Ellipsoid(Q_outer, hbar = hbar)
            assert BlobEllipsoid.contains(inner, outer)
            assert BlobEllipsoid.contains(BlobEllipsoid.polarDual(outer), BlobEllipsoid.polarDual(inner))
            assert not BlobEllipsoid.contains(BlobEllipsoid.polarDual(inner), BlobEllipsoid.polarDual(outer))
            assert BlobEllipsoid.contains(BlobEllipsoid.symplecticPolarDual(outer), BlobEllipsoid.symplecticPolarDual(inner))

    def test_translation_and_level_change_keep_the_set(self, rng):
        E = Ellipsoid(randomPD(rng, 4), hbar = 0.6)
        A = rng.standard_normal((4, 4)) + 3.0 * np.eye(4)
        v = rng.standard_normal(4)
        points = 0.8 * rng.standard_normal((200, 4))
        inside = E.containsPoints(points)
        assert np.array_equal(E.translated(v).containsPoints(points + v), inside)
        assert np.array_equal(E.image(A).translated(v).containsPoints(points @ A.T + v), inside)
        relabeled = E.atLevel(2.5)
        assert relabeled.hbar == 2.5
        assert np.allclose(relabeled.normalizedRadius(points), E.normalizedRadius(points))
        assert BlobEllipsoid.contains(E, relabeled) and BlobEllipsoid.contains(relabeled, E)

class TestProducts:
    def test_john_inside_loewner(self, rng):
        E1, E2 = Ellipsoid(randomPD(rng, 2)), Ellipsoid(randomPD(rng, 2), hbar = 3.0)
        john = BlobEllipsoid.johnOfProduct(E1, E2)
        loewner = BlobEllipsoid.loewnerOfProduct(E1, E2)
        assert BlobEllipsoid.containmentRatio(john, loewner) == pytest.approx(0.5)

    def test_loewner_of_rectangle_matches_khachiyan(self):
        # [-1/2, 1/2] x [-3, 3]
        E1, E2 = Ellipsoid([[4.0]]), Ellipsoid([[1.0 / 9.0]])
        loewner = BlobEllipsoid.loewnerOfProduct(E1, E2)
        corners = np.array([[0.5, 3.0], [0.5, -3.0], [-0.5, 3.0], [-0.5, -3.0]])
        enclosing = BlobEllipsoid.enclosingEllipsoidOfPoints(corners)
        assert np.allclose(loewner.Q, np.diag([2.0, 1.0 / 18.0]))
        assert np.allclose(enclosing.Q, loewner.Q, atol = 1e-6)
        assert np.allclose(loewner.normalizedRadius(corners), 1.0)

    def test_john_touches_each_factor(self):
        E1, E2 = Ellipsoid([[4.0]]), Ellipsoid([[1.0 / 9.0]])
        john = BlobEllipsoid.johnOfProduct(E1, E2)
        assert np.allclose(john.normalizedRadius([[0.5, 0.0], [0.0, 3.0]]), 1.0)

    def test_khachiyan_needs_enough_points(self):
        with pytest.raises(BlobErrors.DomainError):
            BlobEllipsoid.enclosingEllipsoidOfPoints(np.eye(2))

    def test_khachiyan_encloses_random_cloud(self, rng):
        points = rng.standard_normal((200, 3))
        enclosing = BlobEllipsoid.enclosingEllipsoidOfPoints(points)
        assert np.max(enclosing.normalizedRadius(points)) <= 1.0 + 1e-3
