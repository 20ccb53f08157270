"""Steps needed to drive the search approximation below a tolerance, as
the database grows: the step count tracks sqrt(N)."""

import math

from unimetric.search import SearchProblem, minimal_k


def main(epsilon: float = 0.1):
    print(f"{'N':>9} {'sqrt(N)':>9} {'k':>6} {'achieved':>10} {'k/sqrt(N)':>10}")
    for log2n in range(6, 21, 2):
        n = 2**log2n
        problem = SearchProblem.from_size(n)
        k, achieved = minimal_k(problem, epsilon)
        print(
            f"{n:>9} {math.sqrt(n):>9.1f} {k:>6} {achieved:>10.5f} "
            f"{k / math.sqrt(n):>10.3f}"
        )


if __name__ == "__main__":
    main()
