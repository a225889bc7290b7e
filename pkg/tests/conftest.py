import pytest

# criterion id -> label, in report order
CRITERIA = {
    "1": "reference-program corpus",
    "2": "solver trace reproduction",
    "3": "oracle/solver differential (>=500 programs)",
    "4a": "rule satisfaction and supportedness",
    "4b": "anti-chain",
    "4c": "splitting equivalence",
    "4d": "alog within flog; equal when stratified",
    "4e": "alog within slog; equal when stratified",
    "4f": "three-way equality on stratified programs",
    "4g": "K-operator monotonicity",
    "4h": "ta/fa satisfiability",
    "5": "partial aggregates, reduct clauses 1-4",
    "6": "complexity claim (not reproduced, acknowledged)",
}

_outcomes: dict = {key: [] for key in CRITERIA}
_notes: dict = {key: [] for key in CRITERIA}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion a test belongs to")


@pytest.fixture
def note(request):
    """attach a one-line detail to the test's criterion summary"""
    marker = request.node.get_closest_marker("criterion")

    def add(text):
        if marker:
            _notes[marker.args[0]].append(text)

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        name = item.name.split("[", 1)[-1].rstrip("]") if "[" in item.name else item.name
        if hasattr(report, "wasxfail"):
            status = "xpass" if report.passed else "xfail"
        else:
            status = report.outcome
        _outcomes[key].append((name, status))


def pytest_terminal_summary(terminalreporter):
    if not any(_outcomes.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key, label in CRITERIA.items():
        results = _outcomes[key]
        if not results:
            continue
        bad = [name for name, status in results if status != "passed"]
        verdict = "PASS" if not bad else "FAIL"
        line = f"{verdict}  {key:<3} {label}: {len(results) - len(bad)}/{len(results)} checks"
        if bad:
            line += f"; failing: {', '.join(bad)}"
        tr.write_line(line)
        for text in _notes[key]:
            tr.write_line(f"        {text}")
