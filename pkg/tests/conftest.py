import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import report

    if report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(report.LINES):
            terminalreporter.write_line(line)
