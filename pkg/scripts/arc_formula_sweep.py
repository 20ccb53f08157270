"""Sweep the relative phase of a qubit rotation and compare three routes
to the same distance: the closed arc formula, the hull geometry, and the
numerical-range sweep on the dense matrix."""

import math

import numpy as np

from unimetric.circlegeom import polygon_distance_to_origin, smallest_covering_arc
from unimetric.metrics import sup_distance
from unimetric.numrange import numrange_origin_distance


def main():
    print(f"{'theta/pi':>9} {'closed':>12} {'hull oracle':>12} {'sweep':>12} {'max err':>10}")
    for theta in np.linspace(0.05, 1.95, 20) * math.pi:
        w = np.diag([1.0, np.exp(1j * theta)])
        closed = sup_distance(np.eye(2), w).value
        arc = smallest_covering_arc([0.0, theta])
        poly, _ = polygon_distance_to_origin(arc)
        hull = math.sqrt(max(0.0, 1.0 - poly * poly))
        sweep_dist, _ = numrange_origin_distance(w)
        sweep = math.sqrt(max(0.0, 1.0 - sweep_dist * sweep_dist))
        err = max(abs(closed - hull), abs(closed - sweep))
        print(
            f"{theta / math.pi:9.3f} {closed:12.9f} {hull:12.9f} {sweep:12.9f} {err:10.2e}"
        )


if __name__ == "__main__":
    main()
