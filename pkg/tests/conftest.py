"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line for each."""

_CRITERIA: dict[str, list[bool]] = {}
_LABELS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        key = props["criterion"]
        _LABELS[key] = props.get("label", "")
        _CRITERIA.setdefault(key, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=int):
        tag = "PASS" if all(_CRITERIA[key]) else "FAIL"
        terminalreporter.write_line(f"{tag}  criterion {key}: {_LABELS[key]}")
