from __future__ import annotations

import pytest

from motivic_a2.ext import Ext
from motivic_a2.ring import ExtRing

# criterion number -> (description, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture(scope="session")
def small_ext() -> Ext:
    return Ext.compute(48, 12)


@pytest.fixture(scope="session")
def ring() -> ExtRing:
    return ExtRing.compute(86, 15)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
