from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if not acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_log.LINES:
        terminalreporter.write_line(line)
