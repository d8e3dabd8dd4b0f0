import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from quatmod.groups import Label, parse_word  # noqa: E402
from quatmod.quat import OMEGA1, Quaternion  # noqa: E402

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive_fractions = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)


@st.composite
def quaternions(draw, positive_real=False):
    x0 = draw(positive_fractions if positive_real else fractions)
    return Quaternion(x0, draw(fractions), draw(fractions), draw(fractions))


LIPSCHITZ_LABELS = tuple(parse_word("T Ti Ti_inv Tj Tj_inv Tk Tk_inv"))
HURWITZ_LABELS = LIPSCHITZ_LABELS + (Label("D", OMEGA1), Label("D", OMEGA1.conj()))


def random_word(rng: random.Random, max_len: int, labels=LIPSCHITZ_LABELS):
    return tuple(rng.choice(labels) for _ in range(rng.randint(0, max_len)))


words = st.lists(st.sampled_from(LIPSCHITZ_LABELS), max_size=6).map(tuple)
hurwitz_words = st.lists(st.sampled_from(HURWITZ_LABELS), max_size=6).map(tuple)


@pytest.fixture
def rng():
    return random.Random(20260115)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[n])
