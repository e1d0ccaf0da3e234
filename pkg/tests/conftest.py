import pytest

from residua.catalog import builtin, load_catalog

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalog():
    """Default catalog entries, built once so group caches are shared."""
    return load_catalog()


@pytest.fixture(scope="session")
def small_catalog(catalog):
    return [e for e in catalog if e.group.order <= 48]


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin(name)
        return cache[name]

    return get


@pytest.fixture
def criterion():
    def report(label, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
