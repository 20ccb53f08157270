"""Geometry of point sets on the unit circle.

Three operations drive the closed-form unitary metric:

* :func:`smallest_covering_arc` finds the shortest arc containing every
  point, via the largest circular gap between consecutive angles.
* :func:`polygon_distance_to_origin` measures the distance from 0 to the
  convex hull of the points exp(i*theta).  It is computed with plain 2-d
  segment geometry, independently of the arc formula, so the identity
  sin(alpha/2) = sqrt(1 - dist^2) can be used as a cross-check between
  two genuinely different code paths.
* :func:`distance_from_arc` is the closed form itself: sin(alpha/2) for
  arcs shorter than a semicircle, 1 once a semicircle is covered.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError
from .linalg import TAU, _freeze

ANGLE_DEDUP_TOL = 1e-9
ARC_TOL = 1e-9


@dataclass(frozen=True)
class SpectralArc:
    """Deduplicated sorted angles with the smallest covering arc length.

    ``alpha`` equals 2pi minus the largest circular gap between
    consecutive angles; ``covers_semicircle`` is alpha >= pi - ARC_TOL.
    """

    angles: np.ndarray
    multiplicities: np.ndarray
    alpha: float
    covers_semicircle: bool

    def arc_endpoint_indices(self) -> tuple[int, int]:
        """Indices (start, end) of the covering arc within ``angles``.

        The arc runs counterclockwise from start to end; for a single
        distinct angle both indices are 0.
        """
        k = len(self.angles)
        if k == 1:
            return 0, 0
        gaps = np.diff(self.angles, append=self.angles[0] + TAU)
        g = int(np.argmax(gaps))
        return (g + 1) % k, g


@dataclass(frozen=True)
class WitnessWeights:
    """Convex weights over angle indices certifying a polygon distance."""

    support: tuple[int, ...]
    weights: np.ndarray

    def combination(self, angles: np.ndarray) -> complex:
        zs = np.exp(1j * angles[list(self.support)])
        return complex(np.sum(self.weights * zs))


def _dedup_angles(angles) -> tuple[np.ndarray, np.ndarray]:
    """Reduce mod 2pi, sort, merge within tolerance (including the wrap)."""
    a = np.asarray(angles, dtype=float).reshape(-1)
    if a.size == 0:
        raise EmptyInputError("angle set is empty")
    if not np.all(np.isfinite(a)):
        raise ValueError("angles must be finite")
    a = np.sort(np.mod(a, TAU))
    uniq: list[float] = [float(a[0])]
    mult: list[int] = [1]
    for x in a[1:]:
        if x - uniq[-1] <= ANGLE_DEDUP_TOL:
            mult[-1] += 1
        else:
            uniq.append(float(x))
            mult.append(1)
    # wrap merge: the last angle may coincide with the first one mod 2pi
    if len(uniq) > 1 and (uniq[0] + TAU) - uniq[-1] <= ANGLE_DEDUP_TOL:
        mult[0] += mult.pop()
        uniq.pop()
    return np.array(uniq), np.array(mult, dtype=int)


def smallest_covering_arc(angles) -> SpectralArc:
    """Shortest arc of the unit circle containing all the given angles."""
    uniq, mult = _dedup_angles(angles)
    if len(uniq) == 1:
        alpha = 0.0
    else:
        gaps = np.diff(uniq, append=uniq[0] + TAU)
        alpha = float(min(TAU, max(0.0, TAU - gaps.max())))
    return SpectralArc(
        angles=_freeze(uniq),
        multiplicities=_freeze(mult),
        alpha=alpha,
        covers_semicircle=alpha >= math.pi - ARC_TOL,
    )


def distance_from_arc(arc: SpectralArc) -> float:
    """sin(alpha/2) for alpha < pi, saturating at 1 for alpha >= pi."""
    if arc.alpha >= math.pi:
        return 1.0
    return float(min(1.0, max(0.0, math.sin(arc.alpha / 2.0))))


def _antipodal_pair(uniq: np.ndarray) -> tuple[int, int] | None:
    """Pair of indices separated by pi within ARC_TOL, if one exists."""
    k = len(uniq)
    targets = np.mod(uniq + math.pi, TAU)
    for i in range(k):
        j = int(np.searchsorted(uniq, targets[i]))
        for jj in (j - 1, j % k):
            sep = abs(uniq[jj % k] - targets[i])
            sep = min(sep, TAU - sep)
            if jj % k != i and sep <= ARC_TOL:
                return i, jj % k
    return None


def _inside_witness(uniq: np.ndarray, arc: SpectralArc) -> WitnessWeights:
    """Convex weights summing (numerically) to zero when 0 is in the hull."""
    pair = _antipodal_pair(uniq)
    if pair is not None:
        return WitnessWeights(support=pair, weights=_freeze(np.array([0.5, 0.5])))
    # No antipodal pair, so alpha > pi strictly: rotate the arc start to 0
    # and use an interior point with phase in (alpha - pi, pi); the triangle
    # {start, interior, end} contains the origin and the 3-weight linear
    # system p1 z1 + pj zj + pn zn = 0, sum p = 1 has a nonnegative solution.
    s_idx, e_idx = arc.arc_endpoint_indices()
    alpha = arc.alpha
    rel = np.mod(uniq - uniq[s_idx], TAU)
    lo, hi = alpha - math.pi, math.pi
    interior = [
        i for i in range(len(uniq)) if i not in (s_idx, e_idx) and lo < rel[i] < hi
    ]
    if not interior:
        raise RuntimeError("no interior point for the containing triangle")
    # best-conditioned choice: deepest inside the admissible window
    j_idx = max(interior, key=lambda i: min(rel[i] - lo, hi - rel[i]))
    zs = np.exp(1j * uniq[[s_idx, j_idx, e_idx]])
    mat = np.vstack([zs.real, zs.imag, np.ones(3)])
    p = np.linalg.solve(mat, np.array([0.0, 0.0, 1.0]))
    p = np.maximum(p, 0.0)
    p = p / p.sum()
    return WitnessWeights(support=(s_idx, j_idx, e_idx), weights=_freeze(p))


def polygon_distance_to_origin(angles) -> tuple[float, WitnessWeights]:
    """Distance from 0 to the convex hull of the unit-circle points.

    Accepts raw angles or a precomputed :class:`SpectralArc` (indices in
    the returned witness refer to the deduplicated sorted angle set).
    When the hull contains the origin the distance is 0 and the witness
    is an antipodal pair or an acute containing triangle; otherwise the
    minimum is over hull edges, which for circle points are consecutive
    sorted pairs plus the closing edge.
    """
    if isinstance(angles, SpectralArc):
        arc = angles
        uniq = arc.angles
    else:
        arc = smallest_covering_arc(angles)
        uniq = arc.angles
    k = len(uniq)
    if k == 1:
        return 1.0, WitnessWeights(support=(0,), weights=_freeze(np.array([1.0])))
    if arc.alpha >= math.pi - ARC_TOL:
        return 0.0, _inside_witness(uniq, arc)
    zs = np.exp(1j * uniq)
    best = (math.inf, 0, 0, 0.0)
    for i in range(k if k > 2 else 1):
        j = (i + 1) % k
        za, zb = zs[i], zs[j]
        chord = zb - za
        denom = abs(chord) ** 2
        t = 0.5 if denom == 0.0 else min(1.0, max(0.0, -(za.conjugate() * chord).real / denom))
        dist = abs(za + t * chord)
        if dist < best[0]:
            best = (dist, i, j, t)
    dist, i, j, t = best
    w = WitnessWeights(support=(i, j), weights=_freeze(np.array([1.0 - t, t])))
    return float(dist), w


def polygon_csv(arc: SpectralArc) -> str:
    """CSV dump of the eigenangle polygon: theta,re,im,multiplicity."""
    lines = ["theta,re,im,multiplicity"]
    for theta, mult in zip(arc.angles, arc.multiplicities):
        z = complex(np.exp(1j * theta))
        lines.append(f"{float(theta)!r},{z.real!r},{z.imag!r},{int(mult)}")
    return "\n".join(lines) + "\n"
