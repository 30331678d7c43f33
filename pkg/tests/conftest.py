import pytest

from propelinear.phelps import canonical_assignment, phelps_code, phelps_enumerate

N4_SHAPES = [(), (1,), (2,), (1, 2)]

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _markers.get(report.nodeid)
    if marker is None:
        return
    number, title = marker
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and report.passed)


_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def n4_codes():
    """Phelps code, enumeration and canonical assignment for every n=4 shape."""
    out = {}
    for cuts in N4_SHAPES:
        code = phelps_code(4, cuts)
        out[cuts] = (code, phelps_enumerate(code), canonical_assignment(code))
    return out
