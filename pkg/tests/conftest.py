_acceptance: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1].removeprefix("test_")
        detail = ""
        if report.failed and report.longrepr is not None:
            detail = getattr(report.longrepr, "reprcrash", None)
            detail = detail.message.splitlines()[0] if detail else ""
        _acceptance.append((name, "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _acceptance:
        terminalreporter.write_line(f"{status} {name}" + (f"  ({detail})" if detail else ""))
