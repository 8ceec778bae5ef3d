import pytest

from selfsim.specfmt import parse_spec, read_input, spec_cocycle, to_system

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    n, text = marker
    row = _CRITERIA.setdefault(n, {"text": text, "ok": True, "detail": ""})
    if report.outcome != "passed":
        row["ok"] = False
        msg = str(report.longrepr).strip().splitlines()
        row["detail"] = msg[-1] if msg else report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        row = _CRITERIA[n]
        status = "PASS" if row["ok"] else "FAIL"
        line = f"criterion {n:>2}: {status}  {row['text']}"
        if not row["ok"] and row["detail"]:
            line += f"  [{row['detail'][:160]}]"
        terminalreporter.write_line(line)


def load(name):
    spec = parse_spec(read_input(name))
    s = to_system(spec)
    return s, spec_cocycle(spec, s)


@pytest.fixture(scope="session")
def ex6():
    return load("example6.spec")


@pytest.fixture(scope="session")
def s6(ex6):
    return ex6[0]


@pytest.fixture(scope="session")
def c6(ex6):
    return ex6[1]
