import sys
import numpy as np
import pytest

from starconf.field import FieldConfig


@pytest.fixture
def fp():
    return FieldConfig.prime_field()


@pytest.fixture
def qq():
    return FieldConfig.rationals()


@pytest.fixture(params=["fp", "small_p", "qq"])
def any_field(request):
    return {
        "fp": FieldConfig.prime_field(),
        "small_p": FieldConfig.prime_field(32003),
        "qq": FieldConfig.rationals(),
    }[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
