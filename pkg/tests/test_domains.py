import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import quaternions
from oracles import classical_psl2z_reduce
from quatmod.domains import (
    ANGLE_LABELS,
    EXPECTED_ANGLES,
    FACE_COUNTS_P,
    ReductionError,
    classical_reduce,
    contains,
    dihedral_angles,
    euler_characteristic_P,
    polytope_data,
    reduce,
    volume_mc,
)
from quatmod.groups import evaluate, parse_word
from quatmod.moebius import INF, apply, diagonal
from quatmod.quat import I, J, K, OMEGA1, Quaternion

HALF = Fraction(1, 2)


def test_contains_examples():
    assert all(contains(tag, Quaternion(2)) for tag in ("Chimney", "P", "PL", "PH"))
    v = Quaternion(HALF, HALF, HALF, HALF)
    assert contains("P", v) and v.norm_sq() == 1
    q = Quaternion(1, Fraction(1, 4), Fraction(-1, 4))
    assert contains("P", q) and not contains("PL", q)
    with pytest.raises(ValueError):
        contains("PL", Quaternion(0, 1))
    with pytest.raises(ValueError):
        contains("Q", Quaternion(1))


@given(quaternions(positive_real=True))
def test_domain_nesting(q):
    inside = [contains(tag, q) for tag in ("PH", "PL", "P", "Chimney")]
    # PH ⊂ PL ⊂ P ⊂ Chimney: once true, stays true going outwards
    assert inside == sorted(inside)


def test_reduce_examples():
    r = reduce(Quaternion(5, Fraction(7, 2)), "L")
    assert r.word == parse_word("Ti_inv Ti_inv Ti_inv")
    assert r.reduced == Quaternion(5, HALF)
    r = reduce(Quaternion(Fraction(3, 10)), "L")
    assert r.word == parse_word("T") and r.reduced == Fraction(10, 3)


def _random_point(rng, bound=1000):
    def frac():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return Quaternion(Fraction(rng.randint(1, bound), rng.randint(1, bound)), frac(), frac(), frac())


@pytest.mark.parametrize("group, target", [("L", "PL"), ("H", "PH")])
def test_reduction_soundness(group, target):
    rng = random.Random(ord(group))
    for _ in range(300):
        q = _random_point(rng)
        r = reduce(q, group)
        assert apply(evaluate(r.word), q) == r.reduced
        assert contains(target, r.reduced)
        assert r.iterations <= 64


def test_reduction_word_lies_in_group():
    rng = random.Random(12)
    for _ in range(50):
        r = reduce(_random_point(rng), "L")
        assert all(lab.name != "D" or lab.unit in (I, J, K) for lab in r.word)


def test_reduction_real_part_increases_at_inversions():
    rng = random.Random(8)
    for _ in range(100):
        q = _random_point(rng)
        word = reduce(q, "L").word
        p, last = q, q.real
        for lab in reversed(word):  # rightmost label acts first
            p = apply(lab.element(), p)
            if lab.name == "T":
                assert p.real > last
                last = p.real


@pytest.mark.parametrize("group", ["L", "H"])
def test_reduction_idempotent(group):
    rng = random.Random(3)
    for _ in range(100):
        r = reduce(_random_point(rng, 50), group)
        again = reduce(r.reduced, group)
        assert again.reduced == r.reduced
        p = r.reduced
        interior = p.norm_sq() > 1 and all(0 < abs(x) < HALF for x in (p.x1, p.x2, p.x3))
        if interior and len({abs(p.x1), abs(p.x2), abs(p.x3)}) == 3:
            assert again.word == ()


def _slice_reduce(x0, x1):
    r = reduce(Quaternion(x0, x1), "L")
    p = r.reduced
    assert p.x2 == p.x3 == 0
    # back to the classical picture: w = x1 + x0·i
    return classical_psl2z_reduce((p.x1, p.x0 * p.x0))


def test_slice_example():
    got = _slice_reduce(HALF, Fraction(5, 2))
    assert got == classical_psl2z_reduce((Fraction(5, 2), Fraction(1, 4)))
    assert reduce(Quaternion(HALF, Fraction(5, 2)), "L").reduced == 1


def test_slice_matches_classical_oracle():
    rng = random.Random(21)
    for _ in range(300):
        x0 = Fraction(rng.randint(1, 400), rng.randint(1, 400))
        x1 = Fraction(rng.randint(-400, 400), rng.randint(1, 400))
        assert _slice_reduce(x0, x1) == classical_psl2z_reduce((x1, x0 * x0))


def test_package_classical_reduce_agrees_with_oracle():
    rng = random.Random(22)
    for _ in range(200):
        x = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
        y = Fraction(rng.randint(1, 99), rng.randint(1, 99))
        rx, ry = classical_reduce(x, y)
        assert (rx, ry * ry) == classical_psl2z_reduce((x, y * y))


def test_reduce_errors():
    with pytest.raises(ValueError):
        reduce(Quaternion(-1), "L")
    with pytest.raises(ValueError):
        reduce(Quaternion(1), "Q")
    with pytest.raises(ReductionError):
        reduce(Quaternion(Fraction(1, 10**6), Fraction(1, 3)), "L", max_iter=1)


def test_ph_copies_cover_pl():
    rng = random.Random(30)
    d = diagonal(OMEGA1)
    checked = 0
    while checked < 500:
        x = [Fraction(rng.randint(-499, 499), 1000) for _ in range(3)]
        if len({abs(t) for t in x}) < 3 or 0 in x:
            continue
        q = Quaternion(2, *x)
        if not contains("PL", q):
            continue
        hits = [contains("PH", q), contains("PH", apply(d, q)), contains("PH", apply(d, apply(d, q)))]
        assert sum(hits) == 1
        checked += 1


def test_euler_characteristic():
    assert FACE_COUNTS_P == (8, 20, 20, 7, 1)
    assert euler_characteristic_P() == 2
    assert euler_characteristic_P((8, 12, 6)) == 2


def test_dihedral_angles():
    angles = dihedral_angles()
    assert tuple(angles) == ANGLE_LABELS
    expected = [math.pi / n for n in (3, 2, 2, 4, 2, 2, 3, 2, 2, 4)]
    assert [EXPECTED_ANGLES[k] for k in ANGLE_LABELS] == pytest.approx(expected, abs=0)
    for k in ANGLE_LABELS:
        assert abs(angles[k] - EXPECTED_ANGLES[k]) < 1e-9, k
    assert angles["BCD"] == pytest.approx(math.pi / 3, abs=1e-12)
    assert angles["ABinf"] == pytest.approx(math.pi / 4, abs=1e-12)
    assert angles["ABC"] == pytest.approx(math.pi / 2, abs=1e-12)


def test_polytope_data():
    assert len(polytope_data("cube_C")) == 8
    cell = polytope_data("cell24")
    assert len(cell) == 24 and INF in cell and Quaternion(0) in cell
    assert Quaternion(0, Fraction(-1, 4), Fraction(1, 4), Fraction(1, 4)) in polytope_data("rhombic")
    with pytest.raises(ValueError):
        polytope_data("dodecahedron")


def test_volume_reproducible_and_close():
    a = volume_mc("PL", 200_000, seed=3)
    b = volume_mc("PL", 200_000, seed=3)
    assert a == b
    assert abs(a["estimate"] - math.pi**2 / 72) < 5 * a["stderr"]
    c = volume_mc("PL", 200_000, seed=3, workers=4)
    assert c == volume_mc("PL", 200_000, seed=3, workers=4)
    assert abs(c["estimate"] - math.pi**2 / 72) < 5 * c["stderr"]
    assert a["exact_tail"] == pytest.approx(1 / 12)


def test_volume_ph_tail():
    assert volume_mc("PH", 10_000, seed=1)["exact_tail"] == pytest.approx(1 / 36)


def test_volume_ratio():
    pl = volume_mc("PL", 1_000_000, seed=5)
    ph = volume_mc("PH", 1_000_000, seed=5)
    ratio = pl["estimate"] / ph["estimate"]
    rel = math.hypot(pl["stderr"] / pl["estimate"], ph["stderr"] / ph["estimate"])
    assert abs(ratio - 3) < 4 * 3 * rel


def test_volume_errors():
    with pytest.raises(ValueError):
        volume_mc("PL", 100, seed=1)
    with pytest.raises(ValueError):
        volume_mc("Chimney", 10_000, seed=1)
    with pytest.raises(ValueError):
        volume_mc("PL", 10_000, seed=1, workers=0)


def test_d_flips_fix_sign_orbits():
    # every sign pattern of the imaginary part is made uniform by one of D_i, D_j, D_k
    for s in [(1, -1, 1), (-1, 1, 1), (1, 1, -1), (-1, -1, 1)]:
        q = Quaternion(2, *(Fraction(t, 3) for t in s))
        assert any(contains("PL", apply(diagonal(u), q)) for u in (I, J, K))
