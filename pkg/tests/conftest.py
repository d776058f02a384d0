"""Shared fixtures: expensive solver runs are computed once per session
and reused by both the module tests and the acceptance suite."""

from pathlib import Path

import pytest

from wenokit import euler1d, scalar1d
from wenokit.weights import SCHEMES

DATA_DIR = Path(__file__).parent / "data"


class _LazyRuns:
    """Memoized access to the long-running solver results."""

    def __init__(self):
        self._tables = {}
        self._cases = {}

    def convergence(self, scheme: str):
        if scheme not in self._tables:
            self._tables[scheme] = scalar1d.run_convergence(SCHEMES[scheme])
        return self._tables[scheme]

    def euler_case(self, case: str, scheme: str):
        key = (case, scheme)
        if key not in self._cases:
            self._cases[key] = euler1d.run_case(euler1d.CASES[case],
                                                SCHEMES[scheme])
        return self._cases[key]


@pytest.fixture(scope="session")
def runs():
    return _LazyRuns()


@pytest.fixture(scope="session")
def reference_path():
    path = DATA_DIR / "reference_shu_osher_n10000.csv"
    if not path.exists():
        pytest.fail("missing pregenerated reference "
                    f"{path}; regenerate with "
                    "'wenokit make-reference shu_osher --out tests/data'")
    return path
