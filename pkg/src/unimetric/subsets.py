"""Pseudometrics restricted to subsets of the state body.

Two cases have usable structure and are implemented here:

* faces of the density-matrix body, i.e. states supported in a fixed
  subspace, where the supremum reduces to the numerical range of the
  compressed operator;
* separable states on a tensor product, where the extreme points are
  pure product states and the minimum overlap is approached by
  alternating exact single-factor minimizations.

Null spaces of commuting unitary families (the states every group
element fixes under conjugation) are computed by simultaneous
diagonalization and are what the stabilizer machinery builds on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyGeneratorsError,
    NotAFaceError,
    NotCommutingError,
)
from .linalg import (
    TAU,
    _freeze,
    _normal_unitary_eig,
    as_matrix,
    ensure_unitary,
    haar_random_state,
    matrix_to_json,
    operator_matrix,
)
from .metrics import MetricResult, _pair_matrices
from .numrange import numrange_origin_distance

COMMUTATION_TOL = 1e-8
_FACE_TOL = 1e-10
_SUBSET_RESULT_TOL = 1e-6


@dataclass(frozen=True)
class SubspaceFace:
    """Orthonormal columns spanning the supporting subspace of a face."""

    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis)
        if b.ndim != 2 or b.shape[1] < 1 or b.shape[1] > b.shape[0]:
            raise NotAFaceError(f"basis must be n x k with 1 <= k <= n, got {b.shape}")
        gram = b.conj().T @ b
        dev = float(np.abs(gram - np.eye(b.shape[1])).max())
        if dev > _FACE_TOL:
            raise NotAFaceError(f"basis columns not orthonormal (deviation {dev:.3e})")
        object.__setattr__(self, "basis", _freeze(b))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class SeparableProblem:
    """Bipartite split and optimizer knobs for the separable pseudometric."""

    dim_a: int
    dim_b: int
    restarts: int = 32
    max_alternations: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError("factor dimensions must be positive")
        if self.restarts < 1 or self.max_alternations < 1:
            raise ValueError("restarts and max_alternations must be positive")


@dataclass(frozen=True)
class NullSpaceResult:
    """Simultaneous eigenbasis of a commuting family, grouped by character.

    ``blocks[i]`` lists the basis columns of the i-th joint eigenspace and
    ``characters[i]`` the unit-modulus eigenvalue of each generator there.
    The null space itself is the convex hull of the per-column projectors.
    """

    common_eigenbasis: np.ndarray
    blocks: tuple[tuple[int, ...], ...]
    characters: tuple[tuple[complex, ...], ...]

    def to_json(self) -> dict:
        return {
            "blocks": [
                {
                    "character": [[c.real, c.imag] for c in chars],
                    "basis_columns": list(cols),
                }
                for cols, chars in zip(self.blocks, self.characters)
            ],
            "basis": matrix_to_json(self.common_eigenbasis),
        }


def face_distance(u, v, face) -> MetricResult:
    """Sup of d_rho over states supported in the face's subspace.

    Compresses U'V onto the subspace; the value is
    sqrt(1 - dist(0, F(compression))^2) and the maximizer lifts the
    numerical-range witness back to the ambient space.
    """
    if not isinstance(face, SubspaceFace):
        face = SubspaceFace(face)
    mu, mv = _pair_matrices(u, v)
    if face.ambient_dim != mu.shape[0]:
        raise DimensionMismatchError(
            f"face lives in dimension {face.ambient_dim}, operators in {mu.shape[0]}"
        )
    w = mu.conj().T @ mv
    comp = face.basis.conj().T @ w @ face.basis
    dist, witness = numrange_origin_distance(comp)
    value = math.sqrt(min(1.0, max(0.0, 1.0 - dist * dist)))
    maximizer = face.basis @ witness
    maximizer = maximizer / np.linalg.norm(maximizer)
    return MetricResult(
        value=value, maximizer=maximizer, method="optimization", tolerance=_SUBSET_RESULT_TOL
    )


def _beta_compression(w4: np.ndarray, beta: np.ndarray) -> np.ndarray:
    return np.einsum("j,ijkl,l->ik", beta.conj(), w4, beta)


def _alpha_compression(w4: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    return np.einsum("i,ijkl,k->jl", alpha.conj(), w4, alpha)


def product_overlap(w: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> float:
    """|<alpha x beta| W |alpha x beta>| for a bipartite W."""
    vec = np.kron(alpha, beta)
    return abs(complex(vec.conj() @ w @ vec))


def alternating_product_minimization(
    w: np.ndarray,
    dim_a: int,
    dim_b: int,
    alpha0: np.ndarray,
    beta0: np.ndarray,
    max_alternations: int = 200,
    tol: float = 1e-10,
) -> tuple[np.ndarray, np.ndarray, float, list[float]]:
    """Minimize |<a x b|W|a x b>| by exact single-factor sweeps.

    Each half step fixes one factor and takes the other from the
    numerical-range witness of the compressed operator, which minimizes
    the objective over that factor globally.  Steps that fail to improve
    (degenerate witnesses) are skipped, so the recorded objective
    history is nonincreasing.
    """
    w4 = w.reshape(dim_a, dim_b, dim_a, dim_b)
    alpha, beta = alpha0, beta0
    obj = product_overlap(w, alpha, beta)
    history = [obj]
    for _ in range(max_alternations):
        prev = obj
        mb = _beta_compression(w4, beta)
        _, wit = numrange_origin_distance(mb)
        cand = abs(complex(wit.conj() @ mb @ wit))
        if cand <= obj:
            alpha, obj = wit, cand
        history.append(obj)
        ma = _alpha_compression(w4, alpha)
        _, wit = numrange_origin_distance(ma)
        cand = abs(complex(wit.conj() @ ma @ wit))
        if cand <= obj:
            beta, obj = wit, cand
        history.append(obj)
        if prev - obj < tol or obj < 1e-13:
            break
    return alpha, beta, obj, history


def separable_distance(u, v, prob: SeparableProblem) -> MetricResult:
    """Pseudometric over separable states, from the best product witness.

    Multistart alternating optimization over pure product states; the
    reported value sqrt(1 - min^2) is achieved by the returned maximizer,
    hence certifies the true separable distance from below.  Ties between
    restarts resolve to the earliest, so output is scheduling-independent.
    """
    mu, mv = _pair_matrices(u, v)
    n = mu.shape[0]
    if prob.dim_a * prob.dim_b != n:
        raise DimensionMismatchError(
            f"{prob.dim_a} x {prob.dim_b} split does not match dimension {n}"
        )
    w = mu.conj().T @ mv
    rng = np.random.default_rng(prob.seed)
    best_obj = math.inf
    best_pair: tuple[np.ndarray, np.ndarray] | None = None
    for _ in range(prob.restarts):
        a0 = haar_random_state(prob.dim_a, rng)
        b0 = haar_random_state(prob.dim_b, rng)
        alpha, beta, obj, _ = alternating_product_minimization(
            w, prob.dim_a, prob.dim_b, a0, b0, prob.max_alternations
        )
        if obj < best_obj:
            best_obj, best_pair = obj, (alpha, beta)
        if best_obj < 1e-13:
            break
    assert best_pair is not None
    value = math.sqrt(min(1.0, max(0.0, 1.0 - best_obj * best_obj)))
    maximizer = np.kron(best_pair[0], best_pair[1])
    maximizer = maximizer / np.linalg.norm(maximizer)
    return MetricResult(
        value=value, maximizer=maximizer, method="optimization", tolerance=_SUBSET_RESULT_TOL
    )


def _circular_runs(angles: np.ndarray, tol: float) -> list[np.ndarray]:
    """Group sorted angles into runs closer than tol, merging across 2pi."""
    k = len(angles)
    runs: list[list[int]] = [[0]]
    for i in range(1, k):
        if angles[i] - angles[runs[-1][-1]] <= tol:
            runs[-1].append(i)
        else:
            runs.append([i])
    if len(runs) > 1 and (angles[runs[0][0]] + TAU) - angles[runs[-1][-1]] <= tol:
        runs[0] = runs.pop() + runs[0]
    return [np.array(r, dtype=int) for r in runs]


def null_space(generators) -> NullSpaceResult:
    """Simultaneous eigenstructure of pairwise-commuting unitaries.

    Sequential refinement: diagonalize the first generator, then within
    each eigenspace diagonalize the compression of the next, and so on.
    Compressions stay unitary because every generator preserves the
    eigenspaces of the ones already processed.
    """
    gens = list(generators)
    if not gens:
        raise EmptyGeneratorsError("need at least one generator")
    mats = [ensure_unitary(operator_matrix(g)).matrix for g in gens]
    n = mats[0].shape[0]
    for g in mats[1:]:
        if g.shape[0] != n:
            raise DimensionMismatchError("generators have mixed dimensions")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            dev = float(np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max())
            if dev > COMMUTATION_TOL:
                raise NotCommutingError((i, j), dev)
    basis = np.eye(n, dtype=complex)
    blocks: list[tuple[list[int], list[complex]]] = [(list(range(n)), [])]
    for g in mats:
        refined: list[tuple[list[int], list[complex]]] = []
        for cols, chars in blocks:
            sub = basis[:, cols]
            comp = sub.conj().T @ g @ sub
            angles, vecs = _normal_unitary_eig(comp)
            basis[:, cols] = sub @ vecs
            for run in _circular_runs(angles, COMMUTATION_TOL):
                char = complex(np.mean(np.exp(1j * angles[run])))
                char /= abs(char)
                refined.append(([cols[i] for i in run], chars + [char]))
        blocks = refined
    return NullSpaceResult(
        common_eigenbasis=_freeze(basis),
        blocks=tuple(tuple(c) for c, _ in blocks),
        characters=tuple(tuple(ch) for _, ch in blocks),
    )
