import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from hierarch import augment_with_levels, fixtures, poisson_weights
from hierarch.generators import random_static_game, random_tree

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GAMES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "games")


@pytest.fixture
def games_dir():
    return GAMES_DIR


@pytest.fixture
def table1():
    return augment_with_levels(fixtures.table1(), 2)


@pytest.fixture
def entry():
    return augment_with_levels(fixtures.entry_game(), 3)


@pytest.fixture
def f32():
    return poisson_weights(Fraction(3, 2), 3)


def seeded_static(seed):
    return random_static_game(random.Random(seed))


def seeded_tree(seed, **kwargs):
    return random_tree(random.Random(seed), **kwargs)


# -- acceptance summary ------------------------------------------------------

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if not marker:
        return
    number, title = marker
    ok = report.passed
    prev = _criteria.get(number)
    _criteria[number] = (title, ok if prev is None else prev[1] and ok)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
