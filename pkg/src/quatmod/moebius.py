"""2x2 quaternionic matrices and their Möbius action on the half-space Re(q) > 0.

Convention: ``F_A(q) = (aq + b)(cq + d)^{-1}``.  With this formula the map
``A -> F_A`` satisfies ``F_A o F_B = F_{AB}``, so composition of maps is the
ordinary matrix product and words are multiplied left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .quat import ONE, ZERO, Quaternion, QuaternionF, hurwitz_units

__all__ = [
    "INF",
    "Infinity",
    "Point",
    "QMatrix",
    "GroupElement",
    "IwasawaFactors",
    "IDENTITY",
    "check_bg",
    "bg_variants",
    "apply",
    "apply_float",
    "compose",
    "dieudonne",
    "real_part_after",
    "iwasawa",
    "recompose",
    "cayley_ball",
    "element_order",
    "fixed_point_L",
    "is_in_isotropy_K",
    "hurwitz_rotation",
    "translation",
    "inversion",
    "diagonal",
    "L_omega",
    "R_omega",
]


class Infinity:
    """The point at infinity of the quaternionic projective line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
Point = Union[Quaternion, Infinity]


@dataclass(frozen=True)
class QMatrix:
    """Raw matrix [[a, b], [c, d]] with exact quaternion entries."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    @classmethod
    def of(cls, a, b, c, d) -> "QMatrix":
        q = lambda x: x if isinstance(x, Quaternion) else Quaternion(x)  # noqa: E731
        return cls(q(a), q(b), q(c), q(d))

    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, o: "QMatrix") -> "QMatrix":
        return QMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.a, -self.b, -self.c, -self.d)

    def conj_transpose(self) -> "QMatrix":
        return QMatrix(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())

    def canonical(self) -> "QMatrix":
        """Representative of {A, -A} whose first nonzero coefficient is positive."""
        for e in self.entries():
            for n in e.numerators:
                if n:
                    return self if n > 0 else -self
        return self

    def key(self) -> tuple:
        return tuple((e.numerators, e.denominator) for e in self.entries())

    def to_float(self) -> tuple[QuaternionF, ...]:
        return tuple(e.to_float() for e in self.entries())

    def to_json(self) -> list:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]

    @classmethod
    def from_json(cls, obj) -> "QMatrix":
        (a, b), (c, d) = obj
        return cls(*(Quaternion.from_json(x) for x in (a, b, c, d)))

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


_K = QMatrix(ZERO, ONE, ONE, ZERO)


def bg_variants(m: QMatrix) -> tuple[bool, bool, bool]:
    """The three equivalent forms of the BG conditions.

    1. conj(A)^t K A = K with K = [[0,1],[1,0]]
    2. Re(a c̄) = 0, Re(b d̄) = 0, b̄c + d̄a = 1
    3. Re(c d̄) = 0, Re(a b̄) = 0, a d̄ + b c̄ = 1
    """
    a, b, c, d = m.entries()
    v1 = m.conj_transpose() @ _K @ m == _K
    v2 = (a * c.conj()).real == 0 and (b * d.conj()).real == 0 and b.conj() * c + d.conj() * a == ONE
    v3 = (c * d.conj()).real == 0 and (a * b.conj()).real == 0 and a * d.conj() + b * c.conj() == ONE
    return v1, v2, v3


def check_bg(m: QMatrix) -> bool:
    a, b, c, d = m.entries()
    return (a * c.conj()).real == 0 and (b * d.conj()).real == 0 and b.conj() * c + d.conj() * a == ONE


class GroupElement:
    """An isometry of H^1_H: a BG matrix modulo sign, stored in canonical form."""

    __slots__ = ("matrix", "_key")

    def __init__(self, m: QMatrix, *, check: bool = True):
        if check and not check_bg(m):
            raise ValueError(f"matrix fails the BG conditions: {m}")
        self.matrix = m.canonical()
        self._key = self.matrix.key()

    @classmethod
    def of(cls, a, b, c, d) -> "GroupElement":
        return cls(QMatrix.of(a, b, c, d))

    @property
    def a(self) -> Quaternion:
        return self.matrix.a

    @property
    def b(self) -> Quaternion:
        return self.matrix.b

    @property
    def c(self) -> Quaternion:
        return self.matrix.c

    @property
    def d(self) -> Quaternion:
        return self.matrix.d

    def __matmul__(self, o: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ o.matrix, check=False)

    def inverse(self) -> "GroupElement":
        # From conj(A)^t K A = K: A^{-1} = K conj(A)^t K.
        a, b, c, d = self.matrix.entries()
        return GroupElement(QMatrix(d.conj(), b.conj(), c.conj(), a.conj()), check=False)

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = IDENTITY, self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def is_identity(self) -> bool:
        return self._key == IDENTITY._key

    def __eq__(self, o) -> bool:
        return isinstance(o, GroupElement) and self._key == o._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GroupElement({self.matrix})"

    def __call__(self, p):
        return apply(self, p)


IDENTITY = GroupElement(QMatrix(ONE, ZERO, ZERO, ONE))


def translation(u) -> GroupElement:
    return GroupElement(QMatrix.of(1, u, 0, 1))


def inversion() -> GroupElement:
    return GroupElement(QMatrix.of(0, 1, 1, 0))


def diagonal(u) -> GroupElement:
    return GroupElement(QMatrix.of(u, 0, 0, u))


def L_omega(omega) -> GroupElement:
    """L_ω = τ_ω T = [[ω, 1], [1, 0]]."""
    return translation(omega) @ inversion()


def R_omega(omega) -> GroupElement:
    """R_ω = T τ_ω = [[0, 1], [1, ω]]."""
    return inversion() @ translation(omega)


def _entries(g):
    m = g.matrix if isinstance(g, GroupElement) else g
    return m.entries()


def apply(g: GroupElement | QMatrix, p: Point) -> Point:
    """Exact Möbius action, including the point at infinity."""
    a, b, c, d = _entries(g)
    if p is INF:
        return INF if c.is_zero() else a * c.inverse()
    den = c * p + d
    if den.is_zero():
        return INF
    return (a * p + b) * den.inverse()


def apply_float(g, p) -> QuaternionF:
    """Floating-point action on a finite point (used for radical coordinates)."""
    if isinstance(g, (GroupElement, QMatrix)):
        a, b, c, d = (e.to_float() for e in _entries(g))
    else:
        a, b, c, d = (QuaternionF.of(e) for e in g)
    p = QuaternionF.of(p)
    return (a * p + b) * (c * p + d).inverse()


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as ``apply(g, .) o apply(h, .)``: the product g h."""
    return g @ h


def dieudonne(m: QMatrix | GroupElement) -> tuple[Fraction, float]:
    """Squared Dieudonné determinant (exact) and its square root."""
    a, b, c, d = _entries(m)
    det_sq = a.norm_sq() * d.norm_sq() + c.norm_sq() * b.norm_sq() - 2 * (c * a.conj() * b * d.conj()).real
    return det_sq, math.sqrt(det_sq)


def real_part_after(g: GroupElement, q: Quaternion) -> Fraction:
    """Re(g(q)) = Re(q) / |cq + d|^2 for Re(q) > 0."""
    if q.real <= 0:
        raise ValueError("real_part_after needs Re(q) > 0")
    return q.real / (g.c * q + g.d).norm_sq()


@dataclass(frozen=True)
class IwasawaFactors:
    """g = diag(λ, 1/λ) · [[1, ω], [0, 1]] · [[α, β], [β, α]]."""

    lam: float
    omega: QuaternionF
    alpha: QuaternionF
    beta: QuaternionF

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "omega": self.omega.to_json(),
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
        }


def iwasawa(g: GroupElement | QMatrix) -> IwasawaFactors:
    a, b, c, d = _entries(g)
    lam = 1.0 / math.sqrt(c.norm_sq() + d.norm_sq())
    omega = (a * c.conj() + b * d.conj()).to_float()
    return IwasawaFactors(lam, omega, d.to_float() * lam, c.to_float() * lam)


def recompose(f: IwasawaFactors) -> tuple[QuaternionF, QuaternionF, QuaternionF, QuaternionF]:
    lam, w, al, be = f.lam, f.omega, f.alpha, f.beta
    return (
        (al + w * be) * lam,
        (be + w * al) * lam,
        be * (1.0 / lam),
        al * (1.0 / lam),
    )


def cayley_ball(q, direction: str = "forward") -> QuaternionF:
    """Ψ(q) = (1+q)(1-q)^{-1} from the unit ball to Re > 0, or its inverse."""
    q = QuaternionF.of(q)
    one = QuaternionF(1.0)
    if direction == "forward":
        if q.norm_sq() >= 1.0:
            raise ValueError("Cayley transform needs |q| < 1")
        return (one + q) * (one - q).inverse()
    if direction == "inverse":
        if q.real <= 0:
            raise ValueError("inverse Cayley transform needs Re(q) > 0")
        return (one + q).inverse() * (q - one)
    raise ValueError(f"unknown direction {direction!r}")


def element_order(g: GroupElement, cap: int = 64) -> int | None:
    """Least n <= cap with g^n = ±I, else None."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    x = g
    for n in range(1, cap + 1):
        if x.is_identity():
            return n
        x = x @ g
    return None


def fixed_point_L(omega, side: str = "L") -> QuaternionF:
    """Fixed point of L_ω (√3/2 + ω/2), R_ω (√3/2 - ω/2) or T (1)."""
    if side == "T":
        return QuaternionF(1.0)
    w = omega if isinstance(omega, Quaternion) else Quaternion.from_json(omega)
    if not (w.real == 0 and w.norm_sq() == 1 and w.denominator == 1):
        raise ValueError("fixed_point_L expects ω in {±i, ±j, ±k}")
    s = math.sqrt(3) / 2
    if side == "L":
        p, g = QuaternionF(s) + w.to_float() * 0.5, L_omega(w)
    elif side == "R":
        p, g = QuaternionF(s) - w.to_float() * 0.5, R_omega(w)
    else:
        raise ValueError(f"unknown side {side!r}")
    assert apply_float(g, p).dist(p) < 1e-12
    return p


def is_in_isotropy_K(g: GroupElement) -> bool:
    """True iff the matrix has the shape [[α, β], [β, α]] (up to sign)."""
    return g.a == g.d and g.b == g.c


def hurwitz_rotation(u: Quaternion) -> GroupElement:
    """P_u = ½ [[u+1, u-1], [u-1, u+1]], a rotation about 1."""
    if u not in hurwitz_units():
        raise ValueError(f"{u} is not a Hurwitz unit")
    h = Fraction(1, 2)
    return GroupElement(QMatrix((u + 1) * h, (u - 1) * h, (u - 1) * h, (u + 1) * h))


def closure(gens, cap: int = 4096) -> set[GroupElement]:
    """Finite group generated by ``gens`` (exact BFS); raises past ``cap``."""
    seen = {IDENTITY}
    frontier = [IDENTITY]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise OverflowError(f"closure exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return seen


def powers(g: GroupElement, n: int) -> Iterator[GroupElement]:
    x = IDENTITY
    for _ in range(n):
        yield x
        x = x @ g
