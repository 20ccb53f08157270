"""Full verification suite, one test per numbered check.

Every check pins its stated tolerance; the printed line mirrors the
``selftest`` table so failures carry the measured margin.
"""

import pytest

from unimetric import acceptance

NAMES = acceptance.check_names()


@pytest.mark.parametrize("index", range(1, len(NAMES) + 1), ids=[f"{i:02d}_{n.replace(' ', '_')}" for i, n in enumerate(NAMES, 1)])
def test_acceptance_criterion(index):
    result = acceptance.run_checks([index], seed=0)[0]
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.index:2d} {result.name} ({result.seconds:.2f}s): {result.detail}")
    assert result.passed, f"criterion {index} ({result.name}): {result.detail}"
