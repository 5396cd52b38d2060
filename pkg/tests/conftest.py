import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hiddensl2 import QesParams, SolvableParams

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

TEST_DELTAS = [Fraction(1), Fraction(1, 2), Fraction(-2, 3), Fraction(5)]


def rationals(max_num=12, max_den=6, nonzero=False):
    s = st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )
    if nonzero:
        s = s.filter(lambda q: q != 0)
    return s


def random_rational(rng: random.Random, max_num=12, max_den=6, nonzero=False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if q or not nonzero:
            return q


def random_params(rng: random.Random, deltas=None) -> SolvableParams:
    delta = rng.choice(deltas) if deltas else random_rational(rng, 6, 4, nonzero=True)
    return SolvableParams(*(random_rational(rng) for _ in range(5)), delta)


def random_qes(rng: random.Random, nmax=8, deltas=None) -> QesParams:
    delta = rng.choice(deltas) if deltas else random_rational(rng, 6, 4, nonzero=True)
    return QesParams(*(random_rational(rng) for _ in range(6)), delta, rng.randint(0, nmax))


def nondegenerate(params: SolvableParams, kmax: int) -> bool:
    lams = [params.eigenvalue(k) for k in range(kmax + 1)]
    return len(set(lams)) == len(lams)


@pytest.fixture
def rng():
    return random.Random(20261016)


# acceptance criteria report one line each; collected here, printed at the end
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
