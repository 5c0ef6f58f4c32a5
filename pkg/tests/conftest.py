import pytest

CRITERIA = {
    1: "Budeanu-null shunt on the RL case (values, runtime < 1 s)",
    2: "B_e shunt on the RL case",
    3: "full compensation on the RL case",
    4: "RL current coefficients, projection and admittance paths",
    5: "Iliovici canonical values and loop area",
    6: "randomized property suite (>= 1000 instances, < 60 s)",
    7: "B_e shunt minimizes rms(i_r) on a capacitance grid",
    8: "CLI tables digit-for-digit and exit codes",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes.setdefault(mark.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            continue
        failed = [name for name, o in results if o != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"{status}  criterion {n}: {label}"
        if failed:
            line += f"  [failing: {', '.join(failed)}]"
        terminalreporter.write_line(line)
