from pathlib import Path

import pytest

from lingshift.profile import AnalysisResources
from lingshift.resources import default_lexicons
from lingshift.textkit import analyze_text

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture(scope="session")
def resources():
    return AnalysisResources.load()


@pytest.fixture(scope="session")
def analyze(lexicons):
    return lambda text: analyze_text(text, lexicons)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
