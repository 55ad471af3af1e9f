"""The ten acceptance criteria, each at its stated time limit.

Run directly (``python tests/test_acceptance.py``) for one pass/fail line per
criterion, or under pytest where the lines appear in the terminal summary.
"""
import sys

import pytest

from gogkit.verify import CHECKS, run_claim

CRITERIA = [
    (1, "lm"),
    (2, "gamma_n"),
    (3, "lambda22"),
    (4, "bk_tower"),
    (5, "pentagon"),
    (6, "lambda_kl"),
    (7, "functor_fingerprint"),
    (8, "development"),
    (9, "double_link"),
    (10, "unimodular_b1"),
]


def evaluate(number: int, cid: str) -> tuple[bool, str]:
    claim = run_claim(cid)
    in_time = claim.seconds <= CHECKS[cid][2]
    ok = claim.status == "pass" and in_time
    timing = f"{claim.seconds:.3f}s of {CHECKS[cid][2]}s"
    line = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {cid}: {claim.anchor} ({timing})"
    if claim.status != "pass":
        line += f"; computed {claim.computed!r}"
    elif not in_time:
        line += "; over time limit"
    return ok, line


@pytest.mark.parametrize("number,cid", CRITERIA, ids=[c for _, c in CRITERIA])
def test_criterion(number, cid):
    from conftest import ACCEPTANCE_LINES

    ok, line = evaluate(number, cid)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n, c) for n, c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
