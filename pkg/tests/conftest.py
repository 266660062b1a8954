import sys
from pathlib import Path

import pytest
from mpmath import mp

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _restore_mp_precision():
    prec = mp.prec
    yield
    mp.prec = prec


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical reproduction")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "VERDICTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, mod.TOTAL + 1):
        terminalreporter.write_line(mod.VERDICTS.get(n, f"FAIL criterion {n}: not reached (test errored or skipped)"))
