from . import criterion_log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not criterion_log.lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criterion_log.lines):
        terminalreporter.write_line(criterion_log.lines[number])
