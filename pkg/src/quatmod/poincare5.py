"""Poincaré extension of BG Möbius maps to the upper half-space H⁵ = {(q, t) : t > 0}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .moebius import INF, GroupElement, QMatrix, apply, dieudonne
from .orbifold import CHI_ORB_5D
from .quat import Quaternion, QuaternionF

__all__ = [
    "Point5",
    "extend",
    "boundary_restriction",
    "boundary_restriction_check",
    "h5_distance",
    "chimney5_contains",
    "CHI_ORB_5D",
]


@dataclass(frozen=True)
class Point5:
    q: Quaternion | QuaternionF
    t: Fraction | float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError("Point5 needs t > 0")

    @property
    def exact(self) -> bool:
        return isinstance(self.q, Quaternion) and isinstance(self.t, (int, Fraction))

    def to_float(self) -> "Point5":
        return Point5(QuaternionF.of(self.q), float(self.t))

    def to_json(self) -> dict:
        if self.exact:
            return {"q": str(self.q), "t": str(Fraction(self.t))}
        q = QuaternionF.of(self.q)
        return {"q": q.to_json(), "t": float(self.t)}


def _entries(g):
    m = g.matrix if isinstance(g, GroupElement) else g
    return m.entries()


def extend(g: GroupElement | QMatrix, p: Point5) -> Point5:
    """γ̄(q,t) = (((aq+b)(q̄c̄+d̄) + a c̄ t²) / N, det·t / N) with N = |cq+d|² + |c|² t².

    Exact on rational input whenever the Dieudonné determinant is 1, which
    holds for every element of the modular groups.
    """
    det_sq, det = dieudonne(g)
    if det_sq == 0:
        raise ValueError("matrix is not invertible")
    a, b, c, d = _entries(g)
    if p.exact and det_sq == 1:
        q, t = p.q, Fraction(p.t)
        w = c * q + d
        den = w.norm_sq() + c.norm_sq() * t * t
        if den == 0:
            raise ZeroDivisionError("degenerate denominator")
        num = (a * q + b) * w.conj() + a * c.conj() * (t * t)
        return Point5(num / den, t / den)
    af, bf, cf, df = (e.to_float() for e in (a, b, c, d))
    q, t = QuaternionF.of(p.q), float(p.t)
    w = cf * q + df
    den = w.norm_sq() + cf.norm_sq() * t * t
    if den == 0:
        raise ZeroDivisionError("degenerate denominator")
    num = (af * q + bf) * w.conj() + af * cf.conj() * (t * t)
    return Point5(num / den, det * t / den)


def boundary_restriction(g: GroupElement | QMatrix, q: Quaternion):
    """The first component of the extension formula with t = 0 (∞ at the pole)."""
    a, b, c, d = _entries(g)
    w = c * q + d
    if w.is_zero():
        return INF
    return (a * q + b) * w.conj() / w.norm_sq()


def boundary_restriction_check(g: GroupElement | QMatrix, q: Quaternion) -> bool:
    """Does the t = 0 formula agree exactly with the Möbius action on the boundary?"""
    return boundary_restriction(g, q) == apply(g, q)


def h5_distance(p1: Point5, p2: Point5) -> float:
    """Hyperbolic distance: cosh d = 1 + (|q1 - q2|² + (t1 - t2)²) / (2 t1 t2)."""
    q1, q2 = QuaternionF.of(p1.q), QuaternionF.of(p2.q)
    t1, t2 = float(p1.t), float(p2.t)
    dq = (q1 - q2).norm_sq()
    # acosh(1 + x) written to keep precision for small x
    x = (dq + (t1 - t2) ** 2) / (2 * t1 * t2)
    return math.log1p(x + math.sqrt(x * (x + 2)))


def chimney5_contains(p: Point5, tol: float = 1e-12) -> bool:
    """All four coordinates of q in [-1/2, 1/2] and |q|² + t² >= 1 (exact, or to ``tol`` for floats)."""
    q = p.q
    if p.exact:
        half = Fraction(1, 2)
        return all(abs(x) <= half for x in q.coords) and q.norm_sq() + p.t * p.t >= 1
    q = QuaternionF.of(q)
    if not all(abs(x) <= 0.5 + tol for x in (q.x0, q.x1, q.x2, q.x3)):
        return False
    return q.norm_sq() + float(p.t) ** 2 >= 1 - tol
