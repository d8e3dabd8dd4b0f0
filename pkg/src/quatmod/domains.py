"""Fundamental domains: membership, reduction, the Coxeter simplex and volumes.

Coordinates are q = x0 + x1 i + x2 j + x3 k with x0 > 0.  The chimney bounds
|x_n| <= 1/2 for n = 1, 2, 3; P adds |q| >= 1; PL asks the three imaginary
coordinates to share a sign; PH further asks |x1|, |x2| <= |x3|.  Boundary
points belong to every adjacent domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import Label, Word, word_str
from .moebius import INF, apply
from .quat import I, J, K, OMEGA1, Quaternion, QuaternionF

__all__ = [
    "DOMAINS",
    "contains",
    "ReductionResult",
    "reduce",
    "ReductionError",
    "classical_reduce",
    "canonical_upper_half_plane",
    "FACE_COUNTS_P",
    "euler_characteristic_P",
    "SIMPLEX_VERTICES",
    "ANGLE_LABELS",
    "EXPECTED_ANGLES",
    "dihedral_angles",
    "volume_mc",
    "polytope_data",
]

DOMAINS = ("Chimney", "P", "PL", "PH")
HALF = Fraction(1, 2)


def _coords(q) -> tuple:
    if isinstance(q, (Quaternion, QuaternionF)):
        return tuple(q.coords) if isinstance(q, Quaternion) else (q.x0, q.x1, q.x2, q.x3)
    return tuple(q)


def _sign_uniform(x1, x2, x3) -> bool:
    return (x1 >= 0 and x2 >= 0 and x3 >= 0) or (x1 <= 0 and x2 <= 0 and x3 <= 0)


def contains(tag: str, q) -> bool:
    """Membership of q (exact, float or a 4-tuple) in Chimney, P, PL or PH."""
    if tag not in DOMAINS:
        raise ValueError(f"unknown domain {tag!r}")
    x0, x1, x2, x3 = _coords(q)
    if x0 <= 0:
        raise ValueError("point must have positive real part")
    if not all(abs(x) <= HALF for x in (x1, x2, x3)):
        return False
    if tag == "Chimney":
        return True
    if x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3 < 1:
        return False
    if tag == "P":
        return True
    if not _sign_uniform(x1, x2, x3):
        return False
    if tag == "PL":
        return True
    return abs(x1) <= abs(x3) and abs(x2) <= abs(x3)


# -- reduction --------------------------------------------------------------------


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ReductionResult:
    word: Word
    reduced: Quaternion
    iterations: int

    def to_json(self) -> dict:
        return {
            "word": [str(lab) for lab in self.word],
            "word_text": word_str(self.word),
            "reduced": str(self.reduced),
            "iterations": self.iterations,
        }


_T = Label("T")
_TRANS = (("Ti", I), ("Tj", J), ("Tk", K))
_D_FLIPS = (Label("D", I), Label("D", J), Label("D", K))
_D_OMEGA = Label("D", OMEGA1)


def _nearest_shift(x: Fraction) -> int:
    """n with x - n in [-1/2, 1/2]; zero when already there, so ±1/2 stays put."""
    if abs(x) <= HALF:
        return 0
    return math.ceil(x - HALF)


def reduce(q: Quaternion, group: str = "L", max_iter: int = 64) -> ReductionResult:
    """Move q into PL (group L) or PH (group H) by translations, T and units.

    The returned word w satisfies apply(evaluate(w), q) == reduced.
    """
    if group not in ("L", "H"):
        raise ValueError(f"unknown group {group!r}")
    if q.real <= 0:
        raise ValueError("reduce needs Re(q) > 0")
    word: list[Label] = []  # stored reversed: last step first at the end
    p = q
    iterations = 0
    while True:
        for (name, u), x in zip(_TRANS, (p.x1, p.x2, p.x3)):
            n = _nearest_shift(x)
            if n:
                lab = Label(name + "_inv") if n > 0 else Label(name)
                word.extend([lab] * abs(n))
                p = p - u * n
        if p.norm_sq() >= 1:
            break
        iterations += 1
        if iterations > max_iter:
            raise ReductionError(
                f"no convergence after {max_iter} inversions; start {q}, current {p}, word length {len(word)}"
            )
        word.append(_T)
        p = p.inverse()
    if not _sign_uniform(p.x1, p.x2, p.x3):
        for lab in _D_FLIPS:
            cand = apply(lab.element(), p)
            if _sign_uniform(cand.x1, cand.x2, cand.x3):
                word.append(lab)
                p = cand
                break
    if group == "H":
        # D_{ω₁} sends (x1, x2, x3) to (x3, x1, x2)
        best = max(range(3), key=lambda k: (abs((p.x3, p.x2, p.x1)[k]), -k))
        for _ in range(best):
            word.append(_D_OMEGA)
            p = apply(_D_OMEGA.element(), p)
    target = "PL" if group == "L" else "PH"
    assert contains(target, p), (q, p)
    return ReductionResult(tuple(reversed(word)), p, iterations)


def classical_reduce(x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    """Textbook PSL(2,Z) reduction of z = x + iy (y > 0), canonicalized."""
    if y <= 0:
        raise ValueError("need Im z > 0")
    x, y = Fraction(x), Fraction(y)
    while True:
        x -= round(x)
        n2 = x * x + y * y
        if n2 >= 1:
            break
        x, y = -x / n2, y / n2
    return canonical_upper_half_plane(x, y)


def canonical_upper_half_plane(x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    """Pick one representative of the boundary pairs of the standard domain."""
    if x == -HALF:
        x = HALF
    if x * x + y * y == 1 and x < 0:
        x = -x
    return x, y


# -- the polytope P and the Coxeter simplex ----------------------------------------

FACE_COUNTS_P = (8, 20, 20, 7, 1)


def euler_characteristic_P(counts: tuple[int, ...] = FACE_COUNTS_P) -> int:
    return sum((-1) ** n * c for n, c in enumerate(counts))


_R2, _R3 = math.sqrt(2), math.sqrt(3)
SIMPLEX_VERTICES = {
    "A": (1.0, 0.0, 0.0, 0.0),
    "B": (_R3 / 2, 0.5, 0.0, 0.0),
    "C": (1 / _R2, 0.5, 0.5, 0.0),
    "D": (0.5, 0.5, 0.5, 0.5),
    "inf": None,
}
ANGLE_LABELS = ("BCD", "ACinf", "BCinf", "ABinf", "BDinf", "ABC", "ADinf", "ABD", "ACD", "CDinf")
EXPECTED_ANGLES = dict(
    zip(
        ANGLE_LABELS,
        (math.pi / 3, math.pi / 2, math.pi / 2, math.pi / 4, math.pi / 2,
         math.pi / 2, math.pi / 3, math.pi / 2, math.pi / 2, math.pi / 4),
    )
)


def _face_normal(opposite: str, at: np.ndarray) -> np.ndarray:
    """Outward unit normal of the 3-face missing ``opposite``, at a point of that face."""
    if opposite == "inf":
        # the unit hemisphere; the simplex lies outside it
        n = -at
        return n / np.linalg.norm(n)
    finite = [v for v in "ABCD" if v != opposite]
    proj = [np.array(SIMPLEX_VERTICES[v][1:]) for v in finite]
    n3 = np.cross(proj[1] - proj[0], proj[2] - proj[0])
    away = np.array(SIMPLEX_VERTICES[opposite][1:]) - proj[0]
    if n3 @ away > 0:
        n3 = -n3
    n = np.concatenate([[0.0], n3])
    return n / np.linalg.norm(n)


def dihedral_angles() -> dict[str, float]:
    """Angle along each 2-face XYZ between the two 3-faces that contain it."""
    out = {}
    for label in ANGLE_LABELS:
        face = list(label.removesuffix("inf")) + (["inf"] if label.endswith("inf") else [])
        missing = [v for v in ("A", "B", "C", "D", "inf") if v not in face]
        finite = next(v for v in face if v != "inf")
        at = np.array(SIMPLEX_VERTICES[finite])
        n1, n2 = (_face_normal(m, at) for m in missing)
        out[label] = math.acos(max(-1.0, min(1.0, -float(n1 @ n2))))
    return out


# -- Monte Carlo volume -------------------------------------------------------------

# Above x0 = 1 every chimney point has |q| >= 1, so the cross-section is constant:
# a quarter of the unit cube for PL (two sign octants) and a third of that for PH.
_CROSS_SECTION = {"Chimney": 1.0, "P": 1.0, "PL": 0.25, "PH": 1 / 12}
_X_LO = 0.5  # |x|^2 <= 3/4 forces x0 >= 1/2 on the sphere
_CHUNK = 1 << 18


def _member_mask(tag: str, x0, x1, x2, x3) -> np.ndarray:
    mask = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3 >= 1
    if tag in ("PL", "PH"):
        mask &= ((x1 >= 0) & (x2 >= 0) & (x3 >= 0)) | ((x1 <= 0) & (x2 <= 0) & (x3 <= 0))
    if tag == "PH":
        a3 = np.abs(x3)
        mask &= (np.abs(x1) <= a3) & (np.abs(x2) <= a3)
    return mask


def volume_mc(tag: str, samples: int, seed: int, workers: int = 1) -> dict:
    """Hyperbolic volume ∫ dx/x0^4 of a domain.

    The part x0 >= 1 is exact.  On [1/2, 1] x0 is drawn with density ∝ x0^-4
    (stratified into ``samples`` equal-probability slices), the imaginary part
    uniformly from the cube, and the weight is the constant ∫ x0^-4 = 7/3.
    Each worker owns a SeedSequence child, so results depend only on
    (samples, seed, workers).
    """
    if tag not in ("P", "PL", "PH"):
        raise ValueError("volume is finite only for P, PL and PH")
    if samples < 10_000:
        raise ValueError("volume_mc needs at least 10^4 samples")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    weight = (_X_LO**-3 - 1.0) / 3.0
    tail = _CROSS_SECTION[tag] / 3.0
    bounds = np.linspace(0, samples, workers + 1).astype(np.int64)
    hits = 0
    for child, lo, hi in zip(np.random.SeedSequence(seed).spawn(workers), bounds[:-1], bounds[1:]):
        rng = np.random.default_rng(child)
        for start in range(lo, hi, _CHUNK):
            stop = min(hi, start + _CHUNK)
            n = stop - start
            u = (np.arange(start, stop) + rng.random(n)) / samples
            x0 = (_X_LO**-3 - u * (_X_LO**-3 - 1.0)) ** (-1.0 / 3.0)
            x = rng.random((3, n)) - 0.5
            hits += int(np.count_nonzero(_member_mask(tag, x0, *x)))
    p = hits / samples
    lower = weight * p
    stderr = weight * math.sqrt(p * (1 - p) / samples)
    return {
        "domain": tag,
        "estimate": lower + tail,
        "stderr": stderr,
        "exact_tail": tail,
        "samples": samples,
        "seed": seed,
        "workers": workers,
    }


# -- vertex data ------------------------------------------------------------------------


def polytope_data(name: str) -> list:
    h, q = Fraction(1, 2), Fraction(1, 4)
    signs = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    if name == "cube_C":
        return [Quaternion(h, a * h, b * h, c * h) for a, b, c in signs]
    if name == "cell24":
        out = [Quaternion(0), INF]
        for u in (I, J, K):
            out += [u, -u]
        out += [Quaternion(0, a, b, c) for a, b, c in signs]
        out += [Quaternion(0, a * h, b * h, c * h) for a, b, c in signs]
        return out
    if name == "rhombic":
        cube = [Quaternion(0, a * h, b * h, c * h) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
        octa = [
            Quaternion(0, -q, q, q),
            Quaternion(0, q, -q, q),
            Quaternion(0, q, q, -q),
            Quaternion(0, 3 * q, q, q),
            Quaternion(0, q, 3 * q, q),
            Quaternion(0, q, q, 3 * q),
        ]
        return cube + octa
    raise ValueError(f"unknown polytope {name!r}")
