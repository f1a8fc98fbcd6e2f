"""The twelve acceptance criteria, one test each, at their stated tolerance (exact)."""

import pytest

from kaprekar.checks import CHECKS

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__.removeprefix("check_") for c in CHECKS])
def test_criterion(check):
    result = check()
    ACCEPTANCE_LINES.append(result.line())
    print(result.line())
    for line in result.details:
        print("    " + line)
    assert result.passed, "\n".join([result.line()] + result.details)
