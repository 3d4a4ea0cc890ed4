import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import DATA  # noqa: E402
from roughtax.grouping import GroupingConfig, group  # noqa: E402
from roughtax.table import parse_table  # noqa: E402

HEADACHE = DATA / "headache.csv"
HEADACHE_PRINTED = DATA / "headache_printed.csv"


@pytest.fixture(scope="session")
def headache():
    """Worked-example table with row 8's jolt repaired to match the reference values."""
    return parse_table(HEADACHE.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def headache_printed():
    """Worked-example table exactly as printed (row 8 jolt = 0)."""
    return parse_table(HEADACHE_PRINTED.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def headache_taxonomy(headache):
    roots, trace = group(headache, GroupingConfig(single_tree=True))
    assert len(roots) == 1
    return roots[0], trace


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, line = results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {line}")
