"""Exact quaternion arithmetic over the rationals, plus Lipschitz/Hurwitz rings.

A :class:`Quaternion` stores four integer numerators over one positive common
denominator, kept in lowest terms.  That keeps products cheap (integer
multiplies and a single gcd) while every coordinate is still an exact
``Fraction``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, str]

__all__ = [
    "Quaternion",
    "HurwitzQuaternion",
    "QuaternionF",
    "ZERO",
    "ONE",
    "I",
    "J",
    "K",
    "OMEGA1",
    "OMEGA_I",
    "OMEGA_J",
    "OMEGA_K",
    "mul",
    "conj_norm_inv",
    "ring_membership",
    "unit_groups",
    "lipschitz_units",
    "hurwitz_units",
    "parse_quaternion",
]


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class Quaternion:
    """x0 + x1 i + x2 j + x3 k with rational coefficients (immutable)."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, x0: Scalar = 0, x1: Scalar = 0, x2: Scalar = 0, x3: Scalar = 0):
        fs = [_frac(x) for x in (x0, x1, x2, x3)]
        den = math.lcm(*(f.denominator for f in fs))
        self._set(tuple(f.numerator * (den // f.denominator) for f in fs), den)

    def _set(self, nums: tuple, den: int) -> None:
        g = math.gcd(*nums, den)
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        self._n = nums
        self._d = den
        self._hash = None

    @classmethod
    def _raw(cls, nums: tuple, den: int) -> "Quaternion":
        q = object.__new__(cls)
        if den < 0:
            nums, den = tuple(-n for n in nums), -den
        q._set(nums, den)
        return q

    # -- coordinates ------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)  # type: ignore[return-value]

    @property
    def x0(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def x1(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def x2(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def x3(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    @property
    def real(self) -> Fraction:
        return self.x0

    @property
    def imag(self) -> "Quaternion":
        return Quaternion._raw((0,) + self._n[1:], self._d)

    @property
    def numerators(self) -> tuple[int, int, int, int]:
        """Integer numerators over :attr:`denominator` (lowest terms)."""
        return self._n

    @property
    def denominator(self) -> int:
        return self._d

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_real(self) -> bool:
        return not any(self._n[1:])

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._d, other._d
        return Quaternion._raw(tuple(a * d2 + b * d1 for a, b in zip(self._n, other._n)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "Quaternion":
        return Quaternion._raw(tuple(-n for n in self._n), self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Quaternion._raw(tuple(n * f.numerator for n in self._n), self._d * f.denominator)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = other._n
        return Quaternion._raw(
            (
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            ),
            self._d * other._d,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        """Right division ``p / q = p q^{-1}``."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("quaternion division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> "Quaternion":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Quaternion":
        n0, n1, n2, n3 = self._n
        return Quaternion._raw((n0, -n1, -n2, -n3), self._d)

    def norm_sq(self) -> Fraction:
        return Fraction(sum(n * n for n in self._n), self._d * self._d)

    def inverse(self) -> "Quaternion":
        if self.is_zero():
            raise ZeroDivisionError("0 has no quaternion inverse")
        s = sum(n * n for n in self._n)
        n0, n1, n2, n3 = self._n
        # (n/d)^{-1} = conj(n) d / |n|^2
        return Quaternion._raw(
            (n0 * self._d, -n1 * self._d, -n2 * self._d, -n3 * self._d), s
        )

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._d == other._d and self._n == other._n

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conversions ------------------------------------------------------
    def to_float(self) -> "QuaternionF":
        d = self._d
        return QuaternionF(*(n / d for n in self._n))

    def to_json(self) -> dict:
        return {f"x{i}": _fmt_frac(c) for i, c in enumerate(self.coords)}

    @classmethod
    def from_json(cls, obj) -> "Quaternion":
        if isinstance(obj, str):
            return parse_quaternion(obj)
        if isinstance(obj, (int, Fraction)):
            return cls(obj)
        return cls(*(str(obj.get(f"x{i}", 0)) for i in range(4)))

    def __str__(self) -> str:
        parts = []
        for c, unit in zip(self.coords, ("", "i", "j", "k")):
            if c == 0:
                continue
            mag = abs(c)
            if unit:
                body = unit if mag == 1 else f"{_fmt_frac(mag)}*{unit}"
            else:
                body = _fmt_frac(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"Quaternion({str(self)!r})"


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coerce(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return Quaternion._raw((f.numerator, 0, 0, 0), f.denominator)
    return NotImplemented


ZERO = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)
_H = Fraction(1, 2)
OMEGA1 = Quaternion(_H, _H, _H, _H)
OMEGA_I = Quaternion(_H, _H, -_H, -_H)
OMEGA_J = Quaternion(_H, -_H, _H, -_H)
OMEGA_K = Quaternion(_H, -_H, -_H, _H)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def conj_norm_inv(q: Quaternion) -> tuple[Quaternion, Fraction, Quaternion | None]:
    """Conjugate, squared norm and inverse (``None`` for zero)."""
    return q.conj(), q.norm_sq(), (None if q.is_zero() else q.inverse())


# -- parsing ----------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:\.\d+)?(?:/\d+)?)\s*(?:\*\s*(?P<u1>[ijk]))?
          |
          (?P<u2>[ijk])(?:\s*/\s*(?P<den>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``"a+b*i+c*j+d*k"`` with rational coefficients such as ``7/2``.

    Also accepts ``i/4`` and bare units; terms may repeat and are summed.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty quaternion literal")
    coords = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse quaternion literal {text!r}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = Fraction(m.group("coef"))
            unit = m.group("u1")
        else:
            coef = Fraction(1, int(m.group("den"))) if m.group("den") else Fraction(1)
            unit = m.group("u2")
        idx = {None: 0, "i": 1, "j": 2, "k": 3}[unit]
        coords[idx] += sign * coef
        pos = m.end()
    return Quaternion(*coords)


# -- integer rings ------------------------------------------------------------


@dataclass(frozen=True)
class HurwitzQuaternion:
    """(d0 + d1 i + d2 j + d3 k)/2 with all d_n of equal parity."""

    d0: int
    d1: int
    d2: int
    d3: int

    def __post_init__(self):
        p = self.d0 & 1
        if any((d & 1) != p for d in (self.d1, self.d2, self.d3)):
            raise ValueError("doubled coordinates must share parity")

    @property
    def is_lipschitz(self) -> bool:
        return (self.d0 & 1) == 0

    def to_quaternion(self) -> Quaternion:
        return Quaternion._raw((self.d0, self.d1, self.d2, self.d3), 2)

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "HurwitzQuaternion | None":
        if q.denominator not in (1, 2):
            return None
        doubled = tuple(n * (2 // q.denominator) for n in q.numerators)
        if len({d & 1 for d in doubled}) != 1:
            return None
        return cls(*doubled)

    def __mul__(self, other: "HurwitzQuaternion") -> "HurwitzQuaternion":
        prod = self.to_quaternion() * other.to_quaternion()
        out = HurwitzQuaternion.from_quaternion(prod)
        assert out is not None  # the Hurwitz order is a ring
        return out


def ring_membership(q: Quaternion) -> tuple[bool, bool]:
    """(is_lipschitz, is_hurwitz), decided on doubled coordinates."""
    if q.denominator == 1:
        return True, True
    if q.denominator == 2:
        # lowest terms with denominator 2: Hurwitz iff every numerator is odd
        return False, all(n & 1 for n in q.numerators)
    return False, False


def is_lipschitz(q: Quaternion) -> bool:
    return q.denominator == 1


def is_hurwitz(q: Quaternion) -> bool:
    return ring_membership(q)[1]


@lru_cache(maxsize=None)
def lipschitz_units() -> frozenset[Quaternion]:
    out = set()
    for idx in range(4):
        for s in (1, -1):
            c = [0, 0, 0, 0]
            c[idx] = s
            out.add(Quaternion(*c))
    return frozenset(out)


@lru_cache(maxsize=None)
def hurwitz_units() -> frozenset[Quaternion]:
    out = set(lipschitz_units())
    for signs in _sign_patterns(4):
        out.add(Quaternion(*(Fraction(s, 2) for s in signs)))
    return frozenset(out)


def _sign_patterns(n: int) -> Iterable[tuple[int, ...]]:
    for mask in range(1 << n):
        yield tuple(-1 if mask >> b & 1 else 1 for b in range(n))


def unit_groups() -> tuple[frozenset[Quaternion], frozenset[Quaternion]]:
    return lipschitz_units(), hurwitz_units()


# -- floating point quaternions -------------------------------------------------


@dataclass(frozen=True)
class QuaternionF:
    """Float quaternion, used only where radicals appear."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def of(cls, q) -> "QuaternionF":
        if isinstance(q, QuaternionF):
            return q
        if isinstance(q, Quaternion):
            return q.to_float()
        return cls(float(q))

    def __iter__(self):
        return iter((self.x0, self.x1, self.x2, self.x3))

    def __add__(self, o):
        o = QuaternionF.of(o)
        return QuaternionF(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)

    __radd__ = __add__

    def __neg__(self):
        return QuaternionF(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, o):
        return self + (-QuaternionF.of(o))

    def __rsub__(self, o):
        return QuaternionF.of(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, float)):
            return QuaternionF(self.x0 * o, self.x1 * o, self.x2 * o, self.x3 * o)
        o = QuaternionF.of(o)
        a0, a1, a2, a3 = self
        b0, b1, b2, b3 = o
        return QuaternionF(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, o):
        if isinstance(o, (int, float)):
            return self * o
        return QuaternionF.of(o) * self

    def __truediv__(self, o):
        if isinstance(o, (int, float)):
            return self * (1.0 / o)
        return self * QuaternionF.of(o).inverse()

    def conj(self) -> "QuaternionF":
        return QuaternionF(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self) -> float:
        return self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2

    def __abs__(self) -> float:
        return math.sqrt(self.norm_sq())

    def inverse(self) -> "QuaternionF":
        n = self.norm_sq()
        if n == 0.0:
            raise ZeroDivisionError("0 has no quaternion inverse")
        return self.conj() * (1.0 / n)

    @property
    def real(self) -> float:
        return self.x0

    def dist(self, o) -> float:
        return abs(self - QuaternionF.of(o))

    def to_json(self) -> dict:
        return {f"x{i}": c for i, c in enumerate(self)}
