from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ordercone.cone import ConeSpace
from ordercone.genlab import gen_direct_sum, gen_l1_cone, gen_random_cone, gen_simplicial

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

rationals = st.builds(
    Fraction, st.integers(min_value=-9, max_value=9), st.sampled_from([1, 2, 3])
)


def vectors(n):
    return st.tuples(*[rationals] * n)


def matrices(rows, cols):
    return st.tuples(*[vectors(cols)] * rows)


def _cone(kind, n, seed):
    if kind == "simplicial":
        return gen_simplicial(n, seed).cone
    if kind == "l1":
        return gen_l1_cone(max(n, 3) - 1).cone
    if kind == "random":
        return gen_random_cone(max(n, 2), max(n, 2) + seed % 3, seed).cone
    n1 = 1 + seed % max(n - 1, 1)
    return gen_direct_sum(n1, max(n - n1, 1), seed).cone


@st.composite
def cones(draw, kinds=("simplicial", "l1", "random", "direct-sum"), dims=(2, 3, 4)):
    kind = draw(st.sampled_from(kinds))
    n = draw(st.sampled_from(dims))
    seed = draw(st.integers(min_value=0, max_value=2**31))
    return _cone(kind, n, seed)


@pytest.fixture
def orthant2():
    return ConeSpace.from_generators([(1, 0), (0, 1)])


@pytest.fixture
def l1_cone():
    return gen_l1_cone(2).cone
