import pytest

from semirings.endo import end_semiring, enumerate_sr
from semirings.fixtures import FIXTURE_NAMES, load_fixture


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, description): acceptance criterion line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
    terminal = item.config.pluginmanager.get_plugin("terminalreporter")
    if terminal is not None:
        terminal.write_line(
            f"criterion {marker.args[0]:>2} {status}: {marker.args[1]}")


@pytest.fixture(scope="session")
def lats():
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def ends(lats):
    """End(M) as (FiniteSemiring, member tuple) per fixture name."""
    return {name: end_semiring(lat) for name, lat in lats.items()}


@pytest.fixture(scope="session")
def sr_families(lats):
    """Dense subsemiring families per fixture name, ascending by size."""
    return {name: enumerate_sr(lat) for name, lat in lats.items()}


@pytest.fixture(scope="session")
def sr_rings(sr_families):
    """The same families converted to abstract semirings."""
    return {
        name: [fam.to_semiring() for fam in fams]
        for name, fams in sr_families.items()
    }
