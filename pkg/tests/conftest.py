import os

# apply_f re-verifies its own output while the suite runs
os.environ.setdefault("KAPREKAR_SELF_CHECK", "1")

from hypothesis import settings  # noqa: E402

settings.register_profile("suite", max_examples=300, deadline=None)
settings.load_profile("suite")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
