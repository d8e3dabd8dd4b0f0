"""Generators, words, presentations, Cayley balls and cosets for PSL(2,𝔏) and PSL(2,ℌ).

Words evaluate left to right as matrix products, so the leftmost label acts
last on a point.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from typing import Callable, Iterable, Sequence

from .moebius import (
    IDENTITY,
    GroupElement,
    QMatrix,
    check_bg,
    diagonal,
    inversion,
    translation,
)
from .quat import (
    I,
    J,
    K,
    OMEGA1,
    OMEGA_I,
    OMEGA_J,
    OMEGA_K,
    Quaternion,
    hurwitz_units,
    is_hurwitz,
    is_lipschitz,
    lipschitz_units,
    parse_quaternion,
)

__all__ = [
    "Label",
    "Word",
    "Presentation",
    "CayleyBall",
    "parse_label",
    "parse_word",
    "word_str",
    "evaluate",
    "membership",
    "bfs_ball",
    "verify_presentation",
    "coset_count",
    "congruence2_generators",
    "affine_element",
    "lipschitz_presentation",
    "hurwitz_presentation",
    "presentation",
    "standard_generators",
    "bounded_search",
    "BFS_CAP",
    "HEXAGONS",
    "HEXAGONS_AS_PRINTED",
    "NON_RELATOR",
    "congruence2_words",
    "lipschitz_member",
    "unit_group_elements",
    "word_inverse",
]

BFS_CAP = 5

_TRANSLATIONS = {"Ti": I, "Tj": J, "Tk": K}
_UNIT_NAMES = {
    OMEGA1: "w1",
    OMEGA_I: "wi",
    OMEGA_J: "wj",
    OMEGA_K: "wk",
}


@dataclass(frozen=True)
class Label:
    """A generator: T, Ti/Tj/Tk (and ``_inv``), or D[u] for a Hurwitz unit u."""

    name: str
    unit: Quaternion | None = None

    def __post_init__(self):
        if self.name == "D":
            if self.unit is None or self.unit not in hurwitz_units():
                raise ValueError(f"D label needs a Hurwitz unit, got {self.unit}")
        elif self.name not in ("T", "Ti", "Tj", "Tk", "Ti_inv", "Tj_inv", "Tk_inv"):
            raise ValueError(f"unknown generator label {self.name!r}")

    def element(self) -> GroupElement:
        return _label_element(self)

    def inverse(self) -> "Label":
        if self.name == "T":
            return self
        if self.name == "D":
            return Label("D", self.unit.conj())
        if self.name.endswith("_inv"):
            return Label(self.name[:-4])
        return Label(self.name + "_inv")

    def __str__(self) -> str:
        if self.name != "D":
            return self.name
        return f"D[{unit_name(self.unit)}]"


def unit_name(u: Quaternion) -> str:
    if u in _UNIT_NAMES:
        return _UNIT_NAMES[u]
    if -u in _UNIT_NAMES:
        return "-" + _UNIT_NAMES[-u]
    return str(u)


@lru_cache(maxsize=None)
def _label_element(lab: Label) -> GroupElement:
    if lab.name == "T":
        return inversion()
    if lab.name == "D":
        return diagonal(lab.unit)
    base = _TRANSLATIONS[lab.name[:2]]
    return translation(-base if lab.name.endswith("_inv") else base)


Word = tuple  # tuple[Label, ...]

_NAMED_UNITS = {v: k for k, v in _UNIT_NAMES.items()}


def parse_label(text: str) -> Label:
    text = text.strip()
    m = re.fullmatch(r"D\[(-?)(.+)\]", text)
    if m:
        body = m.group(2)
        u = _NAMED_UNITS[body] if body in _NAMED_UNITS else parse_quaternion(body)
        return Label("D", -u if m.group(1) else u)
    return Label(text)


def parse_word(spec: str | Sequence[str]) -> Word:
    """Parse ``"Ti T Ti T"`` (whitespace or comma separated) or a list of names.

    A power suffix ``(...)^n`` is expanded, e.g. ``"(Ti T)^3"``.
    """
    if not isinstance(spec, str):
        return tuple(parse_label(s) for s in spec)
    return tuple(_parse_word_text(spec))


def _parse_word_text(text: str) -> list[Label]:
    out: list[Label] = []
    tokens = re.findall(r"\(|\)(?:\^-?\d+)?|D\[[^\]]+\](?:\^-?\d+)?|[A-Za-z_]+(?:\^-?\d+)?|[^\s,]", text)
    stack: list[list[Label]] = [out]
    for tok in tokens:
        if tok == "(":
            stack.append([])
            continue
        if tok.startswith(")"):
            grp = stack.pop()
            n = int(tok[2:]) if "^" in tok else 1
            stack[-1].extend(_power(grp, n))
            continue
        base, _, exp = tok.partition("^")
        lab = parse_label(base)
        stack[-1].extend(_power([lab], int(exp) if exp else 1))
    if len(stack) != 1:
        raise ValueError(f"unbalanced parentheses in word {text!r}")
    return out


def _power(word: Sequence[Label], n: int) -> list[Label]:
    if n < 0:
        word = [lab.inverse() for lab in reversed(word)]
        n = -n
    return list(word) * n


def word_str(w: Iterable[Label]) -> str:
    return " ".join(str(x) for x in w)


def word_inverse(w: Sequence[Label]) -> Word:
    return tuple(lab.inverse() for lab in reversed(w))


def evaluate(w: Iterable[Label]) -> GroupElement:
    # runs of one translation label collapse to a single τ_{n u}
    g = IDENTITY
    for lab, run in groupby(w):
        n = sum(1 for _ in run)
        if n > 1 and lab.name not in ("T", "D"):
            g = g @ translation(lab.element().b * n)
        else:
            g = g @ lab.element() ** n
    return g


def membership(m: QMatrix | GroupElement, group: str) -> bool:
    """Entries in the Lipschitz (L) or Hurwitz (H) ring and the BG conditions."""
    mat = m.matrix if isinstance(m, GroupElement) else m
    ring = {"L": is_lipschitz, "H": is_hurwitz}[group]
    return all(ring(e) for e in mat.entries()) and check_bg(mat)


# -- presentations ----------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[Label, ...]
    relators: tuple[tuple[str, Word], ...]


def _w(text: str) -> tuple[str, Word]:
    return text, parse_word(text)


def _lipschitz_relators(diag_form: bool) -> list[tuple[str, Word]]:
    rels = [_w("T^2")]
    rels += [_w("Ti Tj Ti_inv Tj_inv"), _w("Ti Tk Ti_inv Tk_inv"), _w("Tk Tj Tk_inv Tj_inv")]
    rels += [_w(f"({t} T)^6") for t in ("Ti", "Tj", "Tk")]
    rels += [_w("(Ti Tj T)^4"), _w("(Ti Tk T)^4"), _w("(Tj Tk T)^4")]
    rels += [_w("(Ti Tj Tk T)^6")]
    rels += [_w("(Ti T)^3 (Tj T)^3 (Tk T)^3"), _w("(Ti T)^3 (Tk T)^3 (Tj T)^3")]
    # [(τ_u T)^3 : T] and [(τ_u T)^3 : τ_u]
    for t in ("Ti", "Tj", "Tk"):
        rels.append(_w(f"({t} T)^3 T ({t} T)^-3 T"))
    for t in ("Ti", "Tj", "Tk"):
        rels.append(_w(f"({t} T)^3 {t} ({t} T)^-3 {t}_inv"))
    names = {"Ti": "D[i]", "Tj": "D[j]", "Tk": "D[k]"}
    for u in ("Ti", "Tj", "Tk"):
        for w in ("Ti", "Tj", "Tk"):
            if u == w:
                continue
            if diag_form:
                rels.append(_w(f"{names[u]} {w} {names[u]} {w}"))
            else:
                rels.append(_w(f"({u} T)^3 {w} ({u} T)^3 {w}"))
    return rels


@lru_cache(maxsize=None)
def lipschitz_presentation() -> Presentation:
    gens = tuple(parse_word("T Ti Tj Tk"))
    return Presentation("PSL(2,L)", gens, tuple(_lipschitz_relators(diag_form=False)))


@lru_cache(maxsize=None)
def hurwitz_presentation() -> Presentation:
    gens = tuple(parse_word("T Ti Tj Tk D[w1] D[wi] D[wj] D[wk]"))
    rels = _lipschitz_relators(diag_form=True)
    omegas = ("w1", "wi", "wj", "wk")
    rels += [_w(f"D[{w}] T D[{w}]^-1 T") for w in omegas]
    rels += [_w(f"D[{w}]^3") for w in omegas]
    rels += [_w(h) for h in HEXAGONS]
    return Presentation("PSL(2,H)", gens, tuple(rels))


# The four hexagon relators.  Two are printed in the source with D_{ω_j}^{-1};
# as printed they evaluate to D_{ω₁}, and dropping that inverse makes them hold.
HEXAGONS = (
    "D[w1] D[i] D[wi] D[j] D[wk] D[k]",
    "D[k] D[wk] D[i] D[wj] D[j] D[w1]",
    "D[i] D[wk] D[j] D[wi] D[k] D[wj]",
    "D[j] D[wj] D[k] D[wi] D[i] D[w1]",
)
HEXAGONS_AS_PRINTED = (
    "D[w1] D[i] D[wi] D[j] D[wk] D[k]",
    "D[k] D[wk] D[i] D[wj]^-1 D[j] D[w1]",
    "D[i] D[wk] D[j] D[wi] D[k] D[wj]",
    "D[j] D[wj]^-1 D[k] D[wi] D[i] D[w1]",
)


def presentation(group: str) -> Presentation:
    return {"L": lipschitz_presentation, "H": hurwitz_presentation}[group]()


NON_RELATOR = "(Ti T)^3"


def verify_presentation(p: Presentation) -> dict:
    """Evaluate every relator exactly; also confirm (τ_i T)^3 = diag(i, i) is not trivial."""
    rows = []
    for text, w in p.relators:
        rows.append({"relator": text, "identity": evaluate(w).is_identity()})
    non = evaluate(parse_word(NON_RELATOR))
    report = {
        "presentation": p.name,
        "relators": rows,
        "all_pass": all(r["identity"] for r in rows),
        "non_relator": {
            "word": NON_RELATOR,
            "identity": non.is_identity(),
            "equals_diag_i": non == diagonal(I),
        },
    }
    if p.name == "PSL(2,H)":
        report["hexagons_as_printed"] = [
            {
                "printed": printed,
                "identity": evaluate(parse_word(printed)).is_identity(),
                "used": used,
            }
            for printed, used in zip(HEXAGONS_AS_PRINTED, HEXAGONS)
        ]
    return report


# -- Cayley balls and cosets -------------------------------------------------------


def standard_generators(group: str) -> tuple[Label, ...]:
    """Symmetric generating sets: T, τ_u^{±1}, and D_{ω₁}^{±1} for ℌ."""
    base = parse_word("T Ti Ti_inv Tj Tj_inv Tk Tk_inv")
    if group == "L":
        return base
    if group == "H":
        return base + (Label("D", OMEGA1), Label("D", OMEGA1.conj()))
    raise ValueError(f"unknown group {group!r}")


@dataclass
class CayleyBall:
    radius: int
    vertices: dict[GroupElement, int] = field(default_factory=dict)  # element -> depth
    edges: list[tuple[GroupElement, GroupElement, Label]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vertices)


def bfs_ball(generators: Iterable[Label], radius: int, cap: int = BFS_CAP) -> CayleyBall:
    """All elements within ``radius`` of the identity; edge g -> ℓ g for each label ℓ."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius > cap:
        raise ValueError(f"radius {radius} exceeds cap {cap}")
    gens = [(lab, lab.element()) for lab in generators]
    ball = CayleyBall(radius)
    ball.vertices[IDENTITY] = 0
    frontier = [IDENTITY]
    for depth in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for lab, s in gens:
                h = s @ g
                if h not in ball.vertices:
                    ball.vertices[h] = depth
                    nxt.append(h)
                ball.edges.append((g, h, lab))
        frontier = nxt
    return ball


def coset_count(ball: CayleyBall, subgroup_membership: Callable[[GroupElement], bool]) -> int:
    """Number of right cosets met by the ball: g ~ h iff g h^{-1} lies in the subgroup."""
    reps: list[GroupElement] = []
    for g in ball.vertices:
        if not any(subgroup_membership(g @ r.inverse()) for r in reps):
            reps.append(g)
    return len(reps)


def lipschitz_member(g: GroupElement) -> bool:
    return membership(g, "L")


def congruence2_generators() -> list[tuple[str, GroupElement]]:
    """T and the twelve translations τ_{u+v}, u ≠ v in {±i, ±j, ±k} (u ≠ -v)."""
    units = {"i": I, "j": J, "k": K}
    out = [("T", inversion())]
    names = list(units)
    for x in range(3):
        for y in range(x + 1, 3):
            for sx in (1, -1):
                for sy in (1, -1):
                    u, v = units[names[x]] * sx, units[names[y]] * sy
                    label = f"τ[{'+' if sx > 0 else '-'}{names[x]}{'+' if sy > 0 else '-'}{names[y]}]"
                    out.append((label, translation(u + v)))
    return out


def congruence2_words() -> list[tuple[str, Word]]:
    """The same thirteen generators written as words over T and τ_i, τ_j, τ_k."""
    out = [("T", parse_word("T"))]
    for name, g in congruence2_generators()[1:]:
        b = g.b
        w = []
        for coef, t in zip((b.x1, b.x2, b.x3), ("Ti", "Tj", "Tk")):
            if coef:
                w.append(t if coef > 0 else t + "_inv")
        out.append((name, parse_word(w)))
    return out


def affine_element(u: Quaternion, b: Quaternion) -> GroupElement:
    """[[u, ub], [0, u]]: first D_u, then the translation by u b u^{-1}."""
    if u not in hurwitz_units():
        raise ValueError(f"{u} is not a Hurwitz unit")
    if b.real != 0:
        raise ValueError("affine_element needs Re(b) = 0")
    return GroupElement(QMatrix(u, u * b, Quaternion(0), u))


def bounded_search(target: GroupElement, generators: Sequence[tuple[str, GroupElement]], max_len: int) -> list[str] | None:
    """Shortest word of length <= max_len over ``generators`` evaluating to ``target``."""
    start = IDENTITY
    seen = {start: []}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        path = seen[g]
        if g == target:
            return path
        if len(path) == max_len:
            continue
        for name, s in generators:
            for nm, el in ((name, s), (name + "^-1", s.inverse())):
                h = g @ el
                if h not in seen:
                    seen[h] = path + [nm]
                    queue.append(h)
    return None


def unit_group_elements(group: str) -> set[GroupElement]:
    units = lipschitz_units() if group == "L" else hurwitz_units()
    return {diagonal(u) for u in units}


def presentation_report_json(group: str) -> str:
    return json.dumps(verify_presentation(presentation(group)), indent=2)
