"""The hyperboloid model and SO₊(4,1).

Points of the hyperboloid are (x0, ..., x4) with -x0² + x1² + ... + x4² = -1
and x0 > 0.  Half-space points (y1, y2, y3, y4), y4 > 0, are identified with
quaternions by q = y4 + y1 i + y2 j + y3 k.  Matrices act on column vectors.

Exact matrices are numpy object arrays of Fractions; everything involving a
square root (dilations, Iwasawa factors) is float64.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .groups import Label, Word
from .quat import I, J, K, Quaternion, QuaternionF

__all__ = [
    "J_FORM",
    "is_lorentz",
    "cayley",
    "cayley_inverse",
    "point_of_quaternion",
    "quaternion_of_point",
    "translation_matrix",
    "minus_J",
    "dilation_matrix",
    "hat",
    "rotation_block",
    "generator_matrix",
    "rep",
    "act",
    "LorentzIwasawa",
    "lorentz_iwasawa",
    "congruence_integrality",
    "is_integer_matrix",
    "S_I",
    "S_J",
    "S_K",
    "hurwitz_lorentz_group",
    "matrix_key",
]

J_FORM = np.diag([-1, 1, 1, 1, 1]).astype(object)


def _exact(rows) -> np.ndarray:
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def _eye5() -> np.ndarray:
    return _exact(np.eye(5, dtype=int))


def is_lorentz(m: np.ndarray, tol: float = 1e-12) -> bool:
    """Mᵗ J M = J, det = +1 and positive (0,0) entry."""
    if m.dtype == object:
        ok = bool(np.all(m.T.dot(J_FORM).dot(m) == J_FORM))
        mf = m.astype(float)
    else:
        mf = m
        ok = bool(np.allclose(mf.T @ J_FORM.astype(float) @ mf, J_FORM.astype(float), atol=tol, rtol=0))
    return bool(ok and mf[0, 0] > 0 and abs(np.linalg.det(mf) - 1) < 1e-9)


# -- Cayley transforms ------------------------------------------------------------


def cayley(x) -> tuple:
    """Hyperboloid point to half-space (y1, y2, y3, y4)."""
    x0, x1, x2, x3, x4 = x
    s = x0 + x4
    if not s > 0:
        raise ValueError("x0 + x4 must be positive on the hyperboloid")
    return (x1 / s, x2 / s, x3 / s, 1 / s)


def cayley_inverse(y) -> tuple:
    y1, y2, y3, y4 = y
    if not y4 > 0:
        raise ValueError("half-space point needs y4 > 0")
    n2 = y1 * y1 + y2 * y2 + y3 * y3 + y4 * y4
    return ((1 + n2) / (2 * y4), y1 / y4, y2 / y4, y3 / y4, (1 - n2) / (2 * y4))


def point_of_quaternion(q) -> tuple:
    """The hyperboloid point of q (Re q > 0)."""
    if isinstance(q, Quaternion):
        x0, x1, x2, x3 = q.coords
    else:
        q = QuaternionF.of(q)
        x0, x1, x2, x3 = q.x0, q.x1, q.x2, q.x3
    return cayley_inverse((x1, x2, x3, x0))


def quaternion_of_point(x):
    y1, y2, y3, y4 = cayley(x)
    if all(isinstance(v, Fraction) for v in (y1, y2, y3, y4)):
        return Quaternion(y4, y1, y2, y3)
    return QuaternionF(float(y4), float(y1), float(y2), float(y3))


# -- generator images -----------------------------------------------------------------


def translation_matrix(x, y, z) -> np.ndarray:
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    h = (x * x + y * y + z * z) / 2
    return _exact(
        [
            [1 + h, x, y, z, h],
            [x, 1, 0, 0, x],
            [y, 0, 1, 0, y],
            [z, 0, 0, 1, z],
            [-h, -x, -y, -z, 1 - h],
        ]
    )


def _translation_float(x: float, y: float, z: float) -> np.ndarray:
    h = (x * x + y * y + z * z) / 2
    return np.array(
        [
            [1 + h, x, y, z, h],
            [x, 1, 0, 0, x],
            [y, 0, 1, 0, y],
            [z, 0, 0, 1, z],
            [-h, -x, -y, -z, 1 - h],
        ]
    )


def minus_J() -> np.ndarray:
    return -J_FORM.copy()


def dilation_matrix(r: float) -> np.ndarray:
    """Image of diag(√r, 1/√r), i.e. q ↦ r q."""
    if r <= 0:
        raise ValueError("dilation needs r > 0")
    c, s = (1 + r * r) / (2 * r), (1 - r * r) / (2 * r)
    m = np.eye(5)
    m[0, 0] = m[4, 4] = c
    m[0, 4] = m[4, 0] = s
    return m


def hat(b: np.ndarray) -> np.ndarray:
    """Embed B ∈ SO(4) as the stabilizer block of the basepoint."""
    exact = b.dtype == object
    m = _eye5() if exact else np.eye(5)
    m[1:, 1:] = b
    return m


def rotation_block(u: Quaternion) -> np.ndarray:
    """4×4 block of q ↦ u q ū on the coordinates (x1, x2, x3, x4) = (i, j, k, 1)."""
    basis = (I, J, K, Quaternion(1))
    cols = []
    for e in basis:
        v = u * e * u.conj() / u.norm_sq()
        cols.append([v.x1, v.x2, v.x3, v.x0])
    return np.array(cols, dtype=object).T


def generator_matrix(label) -> np.ndarray:
    """Image of a generator label, a translation vector (x, y, z), or ('dilation', r)."""
    if isinstance(label, tuple) and label and label[0] == "dilation":
        return dilation_matrix(label[1])
    if isinstance(label, tuple):
        return translation_matrix(*label)
    return _label_matrix(label)


@lru_cache(maxsize=None)
def _label_matrix(lab: Label) -> np.ndarray:
    if lab.name == "T":
        return minus_J()
    if lab.name == "D":
        return hat(rotation_block(lab.unit))
    u = lab.element().b
    return translation_matrix(u.x1, u.x2, u.x3)


def rep(w: Word) -> np.ndarray:
    """Lorentz image of a word (the product of its generator images)."""
    m = _eye5()
    for lab in w:
        m = m.dot(_label_matrix(lab))
    return m


def act(m: np.ndarray, x) -> tuple:
    v = m.dot(np.array(x, dtype=m.dtype))
    return tuple(v)


# -- Iwasawa ------------------------------------------------------------------------------


class LorentzIwasawa(tuple):
    """(r, (x, y, z), B) with M = D(r) 𝔗(x, y, z) B̂."""

    __slots__ = ()

    def __new__(cls, r, xyz, b):
        return super().__new__(cls, (r, xyz, b))

    @property
    def r(self) -> float:
        return self[0]

    @property
    def xyz(self) -> tuple[float, float, float]:
        return self[1]

    @property
    def B(self) -> np.ndarray:
        return self[2]

    def recompose(self) -> np.ndarray:
        return dilation_matrix(self.r) @ _translation_float(*self.xyz) @ hat(self.B)

    def to_json(self) -> dict:
        return {"r": self.r, "xyz": list(self.xyz), "B": self.B.tolist()}


def _dilation_exact(r: Fraction) -> np.ndarray:
    c, s = (1 + r * r) / (2 * r), (1 - r * r) / (2 * r)
    m = _eye5()
    m[0, 0] = m[4, 4] = c
    m[0, 4] = m[4, 0] = s
    return m


def _lorentz_iwasawa_exact(m: np.ndarray) -> LorentzIwasawa:
    # Rational input gives rational factors, so only the final rounding is lost.
    # The float path cancels terms of size |x|²/r and loses ~1e-11 on long words.
    y1, y2, y3, r = cayley(tuple(Fraction(v) for v in m[:, 0]))
    x, y, z = y1 / r, y2 / r, y3 / r
    bhat = translation_matrix(-x, -y, -z).dot(_dilation_exact(1 / r)).dot(m)
    if any(bhat[0, i] != (i == 0) or bhat[i, 0] != (i == 0) for i in range(5)):
        raise ValueError("matrix is not in SO+(4,1)")
    return LorentzIwasawa(float(r), (float(x), float(y), float(z)), bhat[1:, 1:].astype(float))


def lorentz_iwasawa(m: np.ndarray, tol: float = 1e-9) -> LorentzIwasawa:
    """M = D(r) 𝔗(x, y, z) B̂; exact arithmetic when M has rational entries."""
    if getattr(m, "dtype", None) == object and is_lorentz(m):
        return _lorentz_iwasawa_exact(m)
    mf = np.asarray(m, dtype=float)
    if not is_lorentz(mf, tol):
        raise ValueError("matrix is not in SO+(4,1)")
    # M e0 = D(r) 𝔗(x,y,z) e0 is the hyperboloid point of r(1 + xi + yj + zk)
    y1, y2, y3, y4 = cayley(mf[:, 0])
    r = y4
    x, y, z = y1 / r, y2 / r, y3 / r
    bhat = _translation_float(-x, -y, -z) @ dilation_matrix(1 / r) @ mf
    return LorentzIwasawa(float(r), (float(x), float(y), float(z)), bhat[1:, 1:])


# -- integrality -----------------------------------------------------------------------------


def is_integer_matrix(m: np.ndarray) -> bool:
    return m.dtype == object and all(Fraction(v).denominator == 1 for v in m.flat)


def congruence_integrality(x: int, y: int, z: int) -> bool:
    return is_integer_matrix(translation_matrix(x, y, z))


# -- the order-24 unit group in Lorentz form ---------------------------------------------------

S_I = _exact([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
S_J = _exact([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
S_K = _exact([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])


def matrix_key(m: np.ndarray) -> tuple:
    return tuple(Fraction(v) for v in m.flat)


def hurwitz_lorentz_group() -> dict:
    """Build ±Î, ±Ŝ_u and ½(±Î ± Ŝ_i ± Ŝ_j ± Ŝ_k); check closure and S_i S_j = S_k."""
    eye4 = _exact(np.eye(4, dtype=int))
    blocks = []
    for m in (eye4, S_I, S_J, S_K):
        blocks += [m, -m]
    half = Fraction(1, 2)
    for signs in product((1, -1), repeat=4):
        blocks.append(half * sum((s * m for s, m in zip(signs, (eye4, S_I, S_J, S_K))), _exact(np.zeros((4, 4), int))))
    mats = {matrix_key(hat(b)): hat(b) for b in blocks}
    closed = all(matrix_key(a.dot(b)) in mats for a in mats.values() for b in mats.values())
    return {
        "matrices": list(mats.values()),
        "order": len(mats),
        "closed": closed,
        "all_lorentz": all(is_lorentz(m) for m in mats.values()),
        "SiSj_eq_Sk": bool(np.all(S_I.dot(S_J) == S_K)),
        "SjSk_eq_Si": bool(np.all(S_J.dot(S_K) == S_I)),
        "SkSi_eq_Sj": bool(np.all(S_K.dot(S_I) == S_J)),
        "contains_minus_J": matrix_key(minus_J()) in mats,
    }
