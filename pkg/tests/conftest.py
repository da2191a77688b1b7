import pytest

from verbcluster.avm import build
from verbcluster.hierarchy import builtin_hierarchy
from verbcluster.lexicon import builtin_lexicon

SAW_FEED = "dat ik haar de nijlpaarden zag voeren"
SAW_HELP_FEED = "dat ik Henk haar de nijlpaarden zag helpen voeren"
SAW_LET_HELP_FEED = "dat ik Henk Marie haar de nijlpaarden zag laten helpen voeren"


@pytest.fixture(scope="session")
def h():
    return builtin_hierarchy()


@pytest.fixture(scope="session")
def lex():
    return builtin_lexicon()


@pytest.fixture
def fs(h):
    return lambda text: build(text, h)


def word(lex, form):
    signs = lex.lookup(form)
    assert len(signs) == 1, form
    return signs[0]


# -- acceptance reporting ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    entry = _criteria.setdefault(n, {"title": title, "ok": True, "ran": False})
    if call.when == "call" or call.excinfo is not None:
        entry["ran"] = True
        if call.excinfo is not None:
            entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        c = _criteria[n]
        status = "PASS" if c["ok"] and c["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {c['title']}")
