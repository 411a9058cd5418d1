import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Echo the acceptance criterion verdicts where they are visible even
    # when per-test stdout is captured.
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "CRITERION_LINES", None) if mod is not None else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
