import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimetric.errors import (
    DimensionMismatchError,
    EmptyGeneratorsError,
    NotAFaceError,
    NotCommutingError,
)
from unimetric.linalg import haar_random_unitary, kron
from unimetric.metrics import d_psi, sup_distance
from unimetric.subsets import (
    SeparableProblem,
    SubspaceFace,
    alternating_product_minimization,
    face_distance,
    null_space,
    separable_distance,
)

X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]

seeds = st.integers(0, 10_000)


def haar(n, seed):
    return haar_random_unitary(n, seed=seed).matrix


class TestSubspaceFace:
    def test_rejects_nonorthonormal(self):
        with pytest.raises(NotAFaceError):
            SubspaceFace(np.ones((3, 2)))

    def test_accepts_standard_columns(self):
        f = SubspaceFace(np.eye(4)[:, :2])
        assert f.dim == 2 and f.ambient_dim == 4


class TestFaceDistance:
    def test_full_space_equals_sup(self):
        u, v = haar(3, 1), haar(3, 2)
        full = face_distance(u, v, np.eye(3))
        assert full.value == pytest.approx(sup_distance(u, v).value, abs=1e-6)

    def test_invariant_eigenvector_face_is_zero(self):
        u, v = haar(3, 3), haar(3, 4)
        w = u.conj().T @ v
        _, vecs = np.linalg.eigh((w + w.conj().T) / 2)
        # eigenvector of the relative operator spans an invariant face
        from unimetric.linalg import validate_unitary

        wop = validate_unitary(w)
        face = wop.eigen_vectors[:, [0]]
        assert face_distance(u, v, face).value <= 1e-7

    def test_diagonal_compression(self):
        w = np.diag([1.0, 1j, -1.0])
        res = face_distance(np.eye(3), w, np.eye(3)[:, :2])
        assert res.value == pytest.approx(math.sin(math.pi / 4), abs=1e-6)

    def test_maximizer_reproduces_value(self):
        u, v = haar(4, 5), haar(4, 6)
        res = face_distance(u, v, np.eye(4)[:, :3])
        assert d_psi(u, v, res.maximizer) == pytest.approx(res.value, abs=1e-6)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            face_distance(np.eye(3), haar(3, 7), np.eye(4)[:, :2])

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_never_exceeds_sup(self, seed):
        u, v = haar(4, seed), haar(4, seed + 1)
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        q, _ = np.linalg.qr(g)
        assert face_distance(u, v, q).value <= sup_distance(u, v).value + 1e-6

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_pseudometric_axioms(self, seed):
        basis = np.eye(4)[:, :2]
        u, v, w = haar(4, seed), haar(4, seed + 1), haar(4, seed + 2)
        duv = face_distance(u, v, basis).value
        assert duv == pytest.approx(face_distance(v, u, basis).value, abs=1e-5)
        assert duv <= face_distance(u, w, basis).value + face_distance(w, v, basis).value + 1e-5


class TestSeparableDistance:
    def test_phase_pair_is_zero(self):
        u = haar(4, 8)
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=4, seed=0)
        assert separable_distance(u, np.exp(0.7j) * u, prob).value <= 1e-6

    def test_swap_saturates_with_orthogonal_witness(self):
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=8, seed=1)
        res = separable_distance(np.eye(4), SWAP, prob)
        assert res.value == pytest.approx(1.0, abs=1e-6)
        overlap = res.maximizer.conj() @ SWAP @ res.maximizer
        assert abs(overlap) <= 1e-6

    def test_product_factors_match_tensor_of_minima(self):
        y, z = haar_random_unitary(2, seed=10), haar_random_unitary(2, seed=11)
        from unimetric.circlegeom import polygon_distance_to_origin

        m1, _ = polygon_distance_to_origin(y.eigen_angles)
        m2, _ = polygon_distance_to_origin(z.eigen_angles)
        expected = math.sqrt(max(0.0, 1.0 - (m1 * m2) ** 2))
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=12, seed=2)
        res = separable_distance(np.eye(4), kron(y.matrix, z.matrix), prob)
        assert res.value == pytest.approx(expected, abs=1e-6)

    def test_positivity_on_random_unitary(self):
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=8, seed=3)
        for seed in (21, 22, 23):
            u = haar(4, seed)
            assert separable_distance(np.eye(4), u, prob).value > 1e-3

    def test_never_exceeds_sup(self):
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=8, seed=4)
        for seed in (31, 32):
            u, v = haar(4, seed), haar(4, seed + 100)
            assert separable_distance(u, v, prob).value <= sup_distance(u, v).value + 1e-6

    def test_monotone_descent_history(self):
        rng = np.random.default_rng(9)
        u, v = haar(4, 41), haar(4, 42)
        w = u.conj().T @ v
        a0 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b0 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        a0 /= np.linalg.norm(a0)
        b0 /= np.linalg.norm(b0)
        _, _, _, history = alternating_product_minimization(w, 2, 2, a0, b0)
        diffs = np.diff(history)
        assert np.all(diffs <= 1e-12)

    def test_dimension_mismatch(self):
        prob = SeparableProblem(dim_a=2, dim_b=3)
        with pytest.raises(DimensionMismatchError):
            separable_distance(np.eye(4), haar(4, 50), prob)

    @settings(max_examples=8, deadline=None)
    @given(seeds)
    def test_pseudometric_axioms(self, seed):
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=8, seed=0)
        u, v, w = haar(4, seed), haar(4, seed + 1), haar(4, seed + 2)
        duv = separable_distance(u, v, prob).value
        assert duv == pytest.approx(separable_distance(v, u, prob).value, abs=1e-5)
        duw = separable_distance(u, w, prob).value
        dwv = separable_distance(w, v, prob).value
        assert duv <= duw + dwv + 1e-5

    def test_seed_reproducibility(self):
        prob = SeparableProblem(dim_a=2, dim_b=2, restarts=6, seed=7)
        u, v = haar(4, 60), haar(4, 61)
        a = separable_distance(u, v, prob)
        b = separable_distance(u, v, prob)
        assert a.value == b.value
        assert np.array_equal(a.maximizer, b.maximizer)


class TestNullSpace:
    def test_identity_generator(self):
        res = null_space([np.eye(2)])
        assert len(res.blocks) == 1
        assert res.characters[0][0] == pytest.approx(1.0)

    def test_single_z(self):
        res = null_space([Z])
        chars = sorted(c[0].real for c in res.characters)
        assert chars == pytest.approx([-1.0, 1.0])
        assert sorted(len(b) for b in res.blocks) == [1, 1]

    def test_bell_basis_from_zz_xx(self):
        res = null_space([kron(Z, Z), kron(X, X)])
        assert len(res.blocks) == 4
        bell = np.array(
            [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]], dtype=complex
        ).T / math.sqrt(2)
        for cols in res.blocks:
            assert len(cols) == 1
            vec = res.common_eigenbasis[:, cols[0]]
            assert np.max(np.abs(bell.conj().T @ vec) ** 2) >= 1 - 1e-10

    def test_simultaneous_eigenvectors(self):
        gens = [kron(Z, Z), kron(X, X)]
        res = null_space(gens)
        for cols, chars in zip(res.blocks, res.characters):
            for col in cols:
                vec = res.common_eigenbasis[:, col]
                for g, c in zip(gens, chars):
                    assert np.linalg.norm(g @ vec - c * vec) <= 1e-8

    def test_block_states_commute_with_generators(self):
        gens = [kron(Z, Z), kron(X, X)]
        res = null_space(gens)
        rng = np.random.default_rng(3)
        weights = rng.dirichlet(np.ones(4))
        rho = sum(
            w * np.outer(res.common_eigenbasis[:, b[0]], res.common_eigenbasis[:, b[0]].conj())
            for w, b in zip(weights, res.blocks)
        )
        for g in gens:
            assert np.abs(g @ rho - rho @ g).max() <= 1e-8

    def test_noncommuting_rejected(self):
        with pytest.raises(NotCommutingError) as exc:
            null_space([X, Z])
        assert exc.value.pair == (0, 1)

    def test_empty_rejected(self):
        with pytest.raises(EmptyGeneratorsError):
            null_space([])

    def test_json_shape(self):
        res = null_space([Z])
        obj = res.to_json()
        assert {"blocks", "basis"} <= set(obj)
        assert {"character", "basis_columns"} <= set(obj["blocks"][0])
