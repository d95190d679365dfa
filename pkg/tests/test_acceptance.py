"""Acceptance criteria 1 to 10; each prints one PASS/FAIL line."""

from __future__ import annotations

import pytest

from flipmod import suites

from conftest import ACCEPTANCE_LINES


def run_criterion(number):
    checks = suites.run(suites.ACCEPTANCE[number])
    passed = all(c.passed for c in checks)
    detail = "; ".join(f"{'ok' if c.passed else 'FAILED'} {c.name}: {c.detail}" for c in checks)
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} ({suites.ACCEPTANCE[number]}): {detail}"
    print(line)
    ACCEPTANCE_LINES.append((number, line))
    return passed, line


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    passed, line = run_criterion(number)
    assert passed, line


def test_projection_on_discs():
    checks = suites.run("projection-disc")
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]
