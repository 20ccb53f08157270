"""Dense complex linear algebra underneath the unitary-group metrics.

Carriers are plain ``numpy.ndarray`` complex matrices.  The two validated
wrapper types are :class:`UnitaryOperator` (matrix plus cached spectral
decomposition) and :class:`DensityState` (PSD, trace one, with an optional
pure-state vector).  Everything here is a pure function on immutable
values and safe for concurrent use.

Unitary matrices are normal, so the eigendecomposition is done by a
Hermitian split: W = H1 + i H2 with H1 = (W + W')/2 and H2 = (W - W')/(2i).
H1 is diagonalized with a Hermitian solver and H2 is re-diagonalized on
each (near-)degenerate eigenspace of H1.  This keeps every solve
well-conditioned and avoids a general nonsymmetric eigensolver.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidPError,
    NotDensityError,
    NotSquareError,
    NotUnitaryError,
)

TAU = 2.0 * math.pi

UNITARITY_TOL = 1e-10
EIGEN_TOL = 1e-8
# relative threshold for clustering H1 eigenvalues before the H2 pass
_CLUSTER_TOL = 1e-8


def as_matrix(m) -> np.ndarray:
    """Coerce input to a finite, 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise NotSquareError(f"expected a 2-d matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class UnitaryOperator:
    """A validated unitary with its spectral decomposition.

    ``eigen_angles`` are the eigenvalue phases in [0, 2pi), sorted
    ascending; column k of ``eigen_vectors`` is a unit eigenvector for
    the eigenvalue exp(i * eigen_angles[k]).
    """

    matrix: np.ndarray
    eigen_angles: np.ndarray
    eigen_vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.eigen_angles)


@dataclass(frozen=True)
class DensityState:
    """Positive semidefinite, trace-one state; ``pure_vector`` set when rank 1."""

    matrix: np.ndarray
    pure_vector: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-10) -> "DensityState":
        a = as_matrix(m)
        if a.shape[0] != a.shape[1]:
            raise NotSquareError(f"density matrix must be square, got {a.shape}")
        if np.abs(a - a.conj().T).max() > tol:
            raise NotDensityError("matrix is not Hermitian within tolerance")
        tr = a.trace()
        if abs(tr - 1.0) > tol:
            raise NotDensityError(f"trace is {tr:.12g}, expected 1")
        vals, vecs = np.linalg.eigh((a + a.conj().T) / 2)
        if vals.min() < -tol:
            raise NotDensityError(f"minimum eigenvalue {vals.min():.3e} < -{tol:.1e}")
        pure = None
        if vals[-1] >= 1.0 - tol:
            pure = _freeze(vecs[:, -1])
        return cls(matrix=_freeze(a), pure_vector=pure)

    @classmethod
    def pure(cls, vector, tol: float = 1e-10) -> "DensityState":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > tol:
            raise NotDensityError(f"pure-state vector has norm {nrm:.12g}")
        return cls(matrix=_freeze(np.outer(v, v.conj())), pure_vector=_freeze(v))


def _cluster_slices(sorted_vals: np.ndarray, tol: float):
    """Yield index slices grouping consecutive values closer than tol."""
    n = len(sorted_vals)
    start = 0
    for i in range(1, n):
        if sorted_vals[i] - sorted_vals[i - 1] > tol:
            yield slice(start, i)
            start = i
    yield slice(start, n)


def _normal_unitary_eig(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a (near-)unitary matrix via the Hermitian split."""
    h1 = (w + w.conj().T) / 2
    h2 = (w - w.conj().T) / 2j
    vals1, vecs1 = np.linalg.eigh(h1)
    scale = max(1.0, float(np.abs(vals1).max(initial=0.0)))
    vecs = np.empty_like(vecs1)
    for sl in _cluster_slices(vals1, _CLUSTER_TOL * scale):
        block = vecs1[:, sl]
        if block.shape[1] == 1:
            vecs[:, sl] = block
            continue
        comp = block.conj().T @ h2 @ block
        comp = (comp + comp.conj().T) / 2
        _, sub = np.linalg.eigh(comp)
        vecs[:, sl] = block @ sub
    # Rayleigh quotients give the eigenvalues; phases reduced to [0, 2pi)
    ray = np.einsum("ij,ik,kj->j", vecs.conj(), w, vecs)
    angles = np.mod(np.arctan2(ray.imag, ray.real), TAU)
    order = np.argsort(angles, kind="stable")
    return angles[order], vecs[:, order]


def validate_unitary(m, tol: float = UNITARITY_TOL) -> UnitaryOperator:
    """Check unitarity and return the operator with its spectral data.

    Raises
    ------
    NotSquareError
        If the input is not square.
    NotUnitaryError
        If max |U^dag U - I| exceeds ``tol``.
    """
    a = as_matrix(m)
    n, k = a.shape
    if n != k:
        raise NotSquareError(f"unitary must be square, got {a.shape}")
    dev = float(np.abs(a.conj().T @ a - np.eye(n)).max())
    if dev > tol:
        raise NotUnitaryError(dev, tol)
    angles, vecs = _normal_unitary_eig(a)
    resid = np.linalg.norm(a @ vecs - vecs * np.exp(1j * angles), axis=0)
    if resid.max() > EIGEN_TOL:
        raise RuntimeError(
            f"eigendecomposition residual {resid.max():.3e} exceeds {EIGEN_TOL:.1e}"
        )
    return UnitaryOperator(
        matrix=_freeze(a), eigen_angles=_freeze(angles), eigen_vectors=_freeze(vecs)
    )


def ensure_unitary(u, tol: float = UNITARITY_TOL) -> UnitaryOperator:
    """Pass through a UnitaryOperator or validate a raw matrix."""
    if isinstance(u, UnitaryOperator):
        return u
    return validate_unitary(u, tol)


def operator_matrix(u) -> np.ndarray:
    """Raw matrix of a UnitaryOperator or array-like, no validation."""
    if isinstance(u, UnitaryOperator):
        return u.matrix
    return as_matrix(u)


def schatten_norm(m, p: float) -> float:
    """Schatten p-norm: p-th root of the sum of p-th powers of singular values.

    ``p = inf`` returns the largest singular value (operator norm).
    """
    if not (p == math.inf or p >= 1.0):
        raise InvalidPError(f"p must be >= 1 or inf, got {p}")
    a = as_matrix(m)
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0:
        return 0.0
    if p == math.inf:
        return float(sv.max())
    if p == 1.0:
        return float(sv.sum())
    if p == 2.0:
        return float(np.sqrt(np.sum(sv * sv)))
    return float(np.sum(sv**p) ** (1.0 / p))


def _density_matrix(r) -> np.ndarray:
    if isinstance(r, DensityState):
        return r.matrix
    return DensityState.from_matrix(r).matrix


def trace_distance_matrices(a: np.ndarray, b: np.ndarray) -> float:
    """Half the trace norm of the Hermitian difference, clamped to [0, 1].

    Internal fast path: assumes both arguments are already valid density
    matrices, so the difference is Hermitian and eigenvalues suffice.
    """
    diff = a - b
    diff = (diff + diff.conj().T) / 2
    vals = np.linalg.eigvalsh(diff)
    return float(min(1.0, max(0.0, 0.5 * np.abs(vals).sum())))


def trace_distance(r1, r2) -> float:
    """Trace distance between two density states, in [0, 1]."""
    a = _density_matrix(r1)
    b = _density_matrix(r2)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimensions differ: {a.shape} vs {b.shape}")
    return trace_distance_matrices(a, b)


def kron(a, b) -> np.ndarray:
    """Kronecker product, row-major block layout."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def haar_random_unitary(n: int, seed: int | None = None) -> UnitaryOperator:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The R diagonal is phase-fixed to be positive, which makes the QR map
    measure-preserving.  Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    ph = d / np.abs(d)
    return validate_unitary(q * ph)


def haar_random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector with Haar (rotation-invariant) distribution."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# JSON interchange
#
# Matrix files are {"rows": r, "cols": c, "data": [[re, im], ...]} with the
# entries flattened row-major.  Python floats round-trip exactly through
# repr, so write/read is bit-exact.
# ---------------------------------------------------------------------------


def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    rows, cols = a.shape
    flat = a.reshape(-1)
    return {
        "rows": int(rows),
        "cols": int(cols),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if len(data) != rows * cols:
        raise ValueError(
            f"data length {len(data)} does not match rows*cols = {rows * cols}"
        )
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)


def vector_to_json(v) -> dict:
    """A column vector in matrix format (rows = n, cols = 1)."""
    arr = np.asarray(v, dtype=complex).reshape(-1, 1)
    return matrix_to_json(arr)


def save_matrix(path, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(m), fh)


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))
