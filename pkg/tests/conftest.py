import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pentgeom.certify import develop, load_corpus  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "pentgeom" / "data"


@lru_cache(maxsize=None)
def corpus_geometry(name: str):
    return develop(load_corpus(name))


@pytest.fixture(scope="session")
def pent_3_33_7():
    return corpus_geometry("pent_3_33_7.cert")


@pytest.fixture(scope="session")
def pent_4_112_13():
    return corpus_geometry("pent_4_112_13.cert")


@pytest.fixture
def data_dir():
    return DATA


_AC_RESULTS: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_ac"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(name[len("test_ac"):].split("_", 1)[0])
        _AC_RESULTS.setdefault(num, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _AC_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_AC_RESULTS):
        ok = all(o == "passed" for o in _AC_RESULTS[num])
        terminalreporter.write_line(f"AC-{num}: {'PASS' if ok else 'FAIL'}")
