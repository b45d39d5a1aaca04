"""End-to-end acceptance properties, one test per criterion.

Each test prints a PASS/FAIL line with its runtime and asserts both the
property and the runtime budget.
"""

import pytest

from weylkit.checks import ACCEPTANCE

# seconds allowed per criterion; 6 shares its computation with 5
BUDGET = {1: 30, 2: 60, 3: 30, 4: 60, 5: 120, 6: 120, 7: 60, 8: 30, 9: 120, 10: 30, 11: 10}


@pytest.mark.parametrize("number,title,check", ACCEPTANCE, ids=[f"criterion{n:02d}" for n, _, _ in ACCEPTANCE])
def test_criterion(number, title, check, capsys):
    result = check()
    passed = result.ok and result.seconds < BUDGET[number]
    with capsys.disabled():
        print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title} "
              f"({result.seconds:.2f}s, budget {BUDGET[number]}s)")
    assert result.ok, result.witness
    assert result.seconds < BUDGET[number]
