"""Distances between unitary operators.

The central object is the sup-metric ``d(U, V)``: the largest trace
distance between U rho U' and V rho V' over all states rho.  Convexity
puts the supremum on pure states, where it reduces to
sqrt(1 - |<psi|U'V|psi>|^2), and the spectrum of U'V gives the closed
form: d = sin(alpha/2) for covering arc alpha < pi, else 1.  The value
is a metric on the projective unitary group (zero exactly on U = cV).

Per-state pseudometrics (:func:`d_psi`, :func:`d_rho`), the Schatten-p
rescaling, and the tensor composition rule live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import circlegeom
from .errors import (
    DimensionMismatchError,
    InvalidPError,
    NotNormalizedError,
    OutOfRangeError,
)
from .linalg import (
    DensityState,
    ensure_unitary,
    operator_matrix,
    trace_distance_matrices,
    vector_to_json,
)

NORM_TOL = 1e-10
RESULT_TOL = 1e-9

Method = Literal["closed_form", "optimization", "oracle"]


@dataclass(frozen=True)
class MetricResult:
    """A metric value in [0, 1] with an optional maximizing pure state."""

    value: float
    maximizer: np.ndarray | None
    method: Method
    tolerance: float = RESULT_TOL

    def to_json(self) -> dict:
        return {
            "value": float(self.value),
            "method": self.method,
            "maximizer": None if self.maximizer is None else vector_to_json(self.maximizer),
            "tolerance": float(self.tolerance),
        }


@dataclass(frozen=True)
class SandwichBounds:
    """The chain (1/2)||(U - e^{ix}V)psi||^2 <= d_psi^2 <= ||(U - V)psi||^2."""

    lower: float
    mid: float
    upper: float
    holds: bool


@dataclass(frozen=True)
class DistinguishabilityResult:
    """One-shot discrimination verdict for a pair of unitaries.

    Distinguishable exactly when d(U, V) = 1; the witness then has
    orthogonal images U alpha and V alpha (residual is their overlap).
    Otherwise ``min_overlap_bound`` = cos(alpha/2) is the smallest
    achievable |<psi|U'V|psi>| over all pure states.
    """

    distinguishable: bool
    value: float
    witness: np.ndarray | None
    residual: float | None
    min_overlap_bound: float | None
    arc_alpha: float


def _pair_matrices(u, v) -> tuple[np.ndarray, np.ndarray]:
    mu = operator_matrix(u)
    mv = operator_matrix(v)
    if mu.shape != mv.shape:
        raise DimensionMismatchError(f"operator shapes differ: {mu.shape} vs {mv.shape}")
    return mu, mv


def _unit_vector(psi, n: int) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size != n:
        raise DimensionMismatchError(f"state has dimension {v.size}, operators {n}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > NORM_TOL:
        raise NotNormalizedError(f"state norm is {nrm:.12g}")
    return v


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def d_psi(u, v, psi) -> float:
    """Pure-state pseudometric sqrt(1 - |<psi|U'V|psi>|^2).

    Evaluated as the norm of V psi minus its projection onto U psi,
    which equals the same quantity for unitary arguments but avoids the
    cancellation in 1 - |m|^2 when the overlap is close to one.
    """
    mu, mv = _pair_matrices(u, v)
    vec = _unit_vector(psi, mu.shape[0])
    uvec = mu @ vec
    vvec = mv @ vec
    overlap = np.vdot(uvec, vvec)
    residual = vvec - overlap * uvec
    return min(1.0, float(np.linalg.norm(residual)))


def d_rho(u, v, rho) -> float:
    """Trace distance between U rho U' and V rho V'."""
    mu, mv = _pair_matrices(u, v)
    rm = rho.matrix if isinstance(rho, DensityState) else DensityState.from_matrix(rho).matrix
    if rm.shape[0] != mu.shape[0]:
        raise DimensionMismatchError(
            f"state dimension {rm.shape[0]} differs from operators {mu.shape[0]}"
        )
    return trace_distance_matrices(mu @ rm @ mu.conj().T, mv @ rm @ mv.conj().T)


def _representative_indices(arc: circlegeom.SpectralArc, all_angles: np.ndarray) -> list[int]:
    """For each deduplicated angle, one index into the raw sorted angles."""
    reps = []
    for theta in arc.angles:
        sep = np.abs(all_angles - theta)
        sep = np.minimum(sep, 2 * math.pi - sep)
        reps.append(int(np.argmin(sep)))
    return reps


def sup_distance(u, v) -> MetricResult:
    """Sup-metric d(U, V) with a maximizing pure state, closed form.

    Arguments are reordered by a deterministic byte comparison before
    forming U'V, so d(U, V) and d(V, U) run the identical computation
    and return bitwise-equal values.
    """
    mu, mv = _pair_matrices(u, v)
    if mv.tobytes() < mu.tobytes():
        mu, mv = mv, mu
    wop = ensure_unitary(mu.conj().T @ mv)
    arc = circlegeom.smallest_covering_arc(wop.eigen_angles)
    value = circlegeom.distance_from_arc(arc)
    reps = _representative_indices(arc, wop.eigen_angles)
    if value >= 1.0:
        _, witness = circlegeom.polygon_distance_to_origin(arc)
        psi = np.zeros(wop.dim, dtype=complex)
        for idx, w in zip(witness.support, witness.weights):
            psi += math.sqrt(w) * wop.eigen_vectors[:, reps[idx]]
    else:
        s_idx, e_idx = arc.arc_endpoint_indices()
        if s_idx == e_idx:
            psi = wop.eigen_vectors[:, reps[s_idx]].copy()
        else:
            psi = (
                wop.eigen_vectors[:, reps[s_idx]] + wop.eigen_vectors[:, reps[e_idx]]
            ) / math.sqrt(2.0)
    psi = psi / np.linalg.norm(psi)
    return MetricResult(value=value, maximizer=psi, method="closed_form")


def schatten_sup_distance(u, v, p: float) -> float:
    """Schatten-p variant 2^{1/p} d(U, V).

    The scaling comes from the pure-state identity
    || |psi><psi| - |phi><phi| ||_p = 2^{1/p} (1 - |<psi|phi>|^2)^{1/2},
    i.e. it rescales the unnormalized pure-state p-norm distance.  Note
    the p = 1 case is therefore 2 d(U, V), a factor 2 above the
    trace-distance pseudometric, which carries a 1/2 normalization; the
    two conventions are deliberately not reconciled here.
    """
    if not (p == math.inf or p >= 1.0):
        raise InvalidPError(f"p must be >= 1 or inf, got {p}")
    factor = 1.0 if p == math.inf else 2.0 ** (1.0 / p)
    return factor * sup_distance(u, v).value


def tensor_distance(d1: float, d2: float) -> float:
    """Distance of a tensor pair from the factor distances.

    Sine addition delta1*sqrt(1-delta2^2) + delta2*sqrt(1-delta1^2) while
    d1^2 + d2^2 < 1, saturating at 1 otherwise (the factor arcs then
    jointly cover a semicircle).
    """
    for name, val in (("d1", d1), ("d2", d2)):
        if not (0.0 <= val <= 1.0):
            raise OutOfRangeError(f"{name} must lie in [0, 1], got {val}")
    if d1 * d1 + d2 * d2 >= 1.0:
        return 1.0
    return _clamp01(d1 * math.sqrt(1.0 - d2 * d2) + d2 * math.sqrt(1.0 - d1 * d1))


def check_sandwich(u, v, psi) -> SandwichBounds:
    """Evaluate the pure-state sandwich inequality at one triple.

    The phase x = -arg<psi|U'V|psi> aligns the overlap to be real
    nonnegative; the inequality then reads 1 - |m| <= 1 - |m|^2
    <= ||(U-V)psi||^2 with m the overlap.
    """
    mu, mv = _pair_matrices(u, v)
    vec = _unit_vector(psi, mu.shape[0])
    uvec = mu @ vec
    vvec = mv @ vec
    m = np.vdot(uvec, vvec)
    x = -np.angle(m) if m != 0 else 0.0
    lower = 0.5 * float(np.linalg.norm(uvec - np.exp(1j * x) * vvec) ** 2)
    mid = _clamp01(1.0 - abs(m) ** 2)
    upper = float(np.linalg.norm(uvec - vvec) ** 2)
    holds = lower <= mid + 1e-10 and mid <= upper + 1e-10
    return SandwichBounds(lower=lower, mid=mid, upper=upper, holds=holds)


def distinguishability(u, v, tol: float = RESULT_TOL) -> DistinguishabilityResult:
    """Decide one-shot distinguishability; d(U, V) = 1 is the criterion."""
    mu, mv = _pair_matrices(u, v)
    result = sup_distance(mu, mv)
    wop = ensure_unitary(mu.conj().T @ mv)
    arc = circlegeom.smallest_covering_arc(wop.eigen_angles)
    if result.value >= 1.0 - tol:
        alpha_vec = result.maximizer
        residual = float(abs(np.vdot(mu @ alpha_vec, mv @ alpha_vec)))
        return DistinguishabilityResult(
            distinguishable=True,
            value=result.value,
            witness=alpha_vec,
            residual=residual,
            min_overlap_bound=None,
            arc_alpha=arc.alpha,
        )
    bound = math.cos(arc.alpha / 2.0)
    return DistinguishabilityResult(
        distinguishable=False,
        value=result.value,
        witness=None,
        residual=None,
        min_overlap_bound=bound,
        arc_alpha=arc.alpha,
    )
