import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimetric.circlegeom import polygon_distance_to_origin
from unimetric.errors import NotSquareError
from unimetric.linalg import haar_random_unitary
from unimetric.numrange import NumericalRangeQuery, numrange_origin_distance

seeds = st.integers(0, 10_000)


def form_value(m, psi):
    return complex(psi.conj() @ m @ psi)


class TestQueryValidation:
    def test_rejects_rectangular(self):
        with pytest.raises(NotSquareError):
            NumericalRangeQuery(np.ones((2, 3)))

    def test_rejects_bad_knobs(self):
        with pytest.raises(ValueError):
            NumericalRangeQuery(np.eye(2), phi_samples=4)
        with pytest.raises(ValueError):
            NumericalRangeQuery(np.eye(2), refine_iters=-1)


class TestKnownValues:
    def test_identity(self):
        dist, wit = numrange_origin_distance(np.eye(3))
        assert dist == pytest.approx(1.0, abs=1e-10)
        assert abs(np.linalg.norm(wit) - 1.0) <= 1e-10

    def test_antipodal_diagonal(self):
        m = np.diag([1.0, -1.0]).astype(complex)
        dist, wit = numrange_origin_distance(m)
        assert dist == 0.0
        assert abs(form_value(m, wit)) <= 1e-8

    def test_scalar_matrix(self):
        dist, wit = numrange_origin_distance(np.array([[0.3 - 0.4j]]))
        assert dist == pytest.approx(0.5, abs=1e-12)
        assert abs(form_value(np.array([[0.3 - 0.4j]]), wit)) == pytest.approx(0.5, abs=1e-12)

    def test_quarter_arc_unitary(self):
        m = np.diag([1.0, 1j])
        dist, _ = numrange_origin_distance(m)
        assert dist == pytest.approx(math.cos(math.pi / 4), abs=1e-6)

    def test_degenerate_support_face_witness(self):
        # the closest boundary point lies strictly inside an edge, so the
        # minimizing eigenspace is two-dimensional and needs the mix
        m = np.diag([1.0, 1j])
        dist, wit = numrange_origin_distance(m)
        assert abs(form_value(m, wit)) == pytest.approx(dist, abs=1e-6)

    def test_nonnormal_compression(self):
        # upper-left 2x2 compression of a 3x3 permutation is a Jordan-like
        # block whose range is the disk of radius 1/2 around 0
        m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        dist, wit = numrange_origin_distance(m)
        assert dist == 0.0
        assert abs(form_value(m, wit)) <= 1e-8

    def test_shifted_nonnormal_positive(self):
        m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex) + 0.75 * np.eye(2)
        dist, wit = numrange_origin_distance(m)
        assert dist == pytest.approx(0.25, abs=1e-8)
        assert abs(form_value(m, wit)) == pytest.approx(0.25, abs=1e-6)


class TestAgainstCircleGeometry:
    @settings(max_examples=60, deadline=None)
    @given(seeds, st.integers(2, 6))
    def test_normal_case_agreement(self, seed, n):
        u = haar_random_unitary(n, seed=seed)
        poly, _ = polygon_distance_to_origin(u.eigen_angles)
        sweep, _ = numrange_origin_distance(u.matrix)
        assert sweep == pytest.approx(poly, abs=1e-6)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_witness_consistency(self, seed):
        u = haar_random_unitary(4, seed=seed)
        dist, wit = numrange_origin_distance(u.matrix)
        assert abs(form_value(u.matrix, wit)) == pytest.approx(dist, abs=1e-6)

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.floats(0.0, 6.28))
    def test_rotation_equivariance(self, seed, phi):
        u = haar_random_unitary(3, seed=seed)
        base, _ = numrange_origin_distance(u.matrix)
        rotated, _ = numrange_origin_distance(np.exp(1j * phi) * u.matrix)
        assert rotated == pytest.approx(base, abs=1e-8)


class TestZeroWitness:
    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(2, 6))
    def test_interior_shift_has_witness(self, seed, n):
        # shifting by any attained value drags 0 into the range
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi /= np.linalg.norm(psi)
        shifted = m - form_value(m, psi) * np.eye(n)
        dist, wit = numrange_origin_distance(shifted)
        assert dist == 0.0
        assert abs(form_value(shifted, wit)) <= 1e-8
        assert abs(np.linalg.norm(wit) - 1.0) <= 1e-8
