"""Command-line front end.  Every subcommand prints one JSON document with sorted keys.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

import numpy as np

from . import domains, groups, lorentz, moebius, orbifold, poincare5
from .moebius import INF, GroupElement, QMatrix
from .quat import Quaternion, QuaternionF, parse_quaternion


class UsageError(Exception):
    pass


# -- argument parsing helpers ----------------------------------------------------------


def _point(text: str):
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    try:
        return parse_quaternion(text)
    except ValueError as exc:
        raise UsageError(f"bad quaternion {text!r}: {exc}") from exc


def _quat_from_json(v) -> Quaternion:
    if isinstance(v, (int, str)):
        return parse_quaternion(str(v))
    if isinstance(v, dict):
        return Quaternion.from_json(v)
    raise UsageError(f"bad matrix entry {v!r}")


def _qmatrix(text: str) -> QMatrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON matrix: {exc}") from exc
    if not (isinstance(rows, list) and len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise UsageError("matrix must be [[a, b], [c, d]]")
    try:
        (a, b), (c, d) = ((_quat_from_json(x) for x in row) for row in rows)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return QMatrix(a, b, c, d)


def _word(text: str):
    try:
        return groups.parse_word(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from exc


def _element(args) -> GroupElement:
    if args.word is not None:
        return groups.evaluate(_word(args.word))
    if args.matrix is not None:
        m = _qmatrix(args.matrix)
        if not moebius.check_bg(m):
            raise ValueError("matrix fails the BG conditions")
        return GroupElement(m)
    raise UsageError("give --matrix or --word")


def _matrix_or_element(args) -> QMatrix:
    if args.word is not None:
        return groups.evaluate(_word(args.word)).matrix
    if args.matrix is not None:
        return _qmatrix(args.matrix)
    raise UsageError("give --matrix or --word")


def _pstr(p) -> str:
    return "inf" if p is INF else str(p)


def _exact_matrix_json(m: np.ndarray):
    if m.dtype == object:
        return [[str(Fraction(v)) for v in row] for row in m]
    return [[float(v) for v in row] for row in m]


# -- subcommands -------------------------------------------------------------------------


def cmd_reduce(args):
    q = _point(args.point)
    if q is INF:
        raise ValueError("cannot reduce the point at infinity")
    res = domains.reduce(q, args.group, args.max_iter)
    out = res.to_json()
    out.update(group=args.group, point=str(q))
    return out


def cmd_iwasawa(args):
    g = _element(args)
    f = moebius.iwasawa(g)
    rec = moebius.recompose(f)
    orig = [e.to_float() for e in g.matrix.entries()]
    # PSL: the factors recompose g up to sign
    err = min(max(abs(r - s * o) for r, o in zip(rec, orig)) for s in (1, -1))
    out = f.to_json()
    out["recomposition_error"] = err
    out["matrix"] = g.matrix.to_json()
    return out


def cmd_det(args):
    m = _matrix_or_element(args)
    det_sq, det = moebius.dieudonne(m)
    return {"det_sq": str(det_sq), "det": det}


def cmd_apply(args):
    g = _element(args)
    p = _point(args.point)
    return {"point": _pstr(p), "image": _pstr(moebius.apply(g, p)), "matrix": g.matrix.to_json()}


def cmd_order(args):
    g = _element(args)
    n = moebius.element_order(g, args.cap)
    return {"order": n, "cap": args.cap, "matrix": g.matrix.to_json()}


def cmd_verify_presentation(args):
    report = groups.verify_presentation(groups.presentation(args.group))
    ok = report["all_pass"] and not report["non_relator"]["identity"]
    return report, 0 if ok else 1


def _vertex_id(g: GroupElement) -> str:
    return "g" + hashlib.sha1(repr(g.matrix.key()).encode()).hexdigest()[:12]


def cmd_orbit(args):
    ball = groups.bfs_ball(groups.standard_generators(args.group), args.radius)
    if args.output == "dot":
        lines = [f"digraph cayley_{args.group}_r{args.radius} {{"]
        for g, depth in ball.vertices.items():
            lines.append(f'  {_vertex_id(g)} [label="{depth}"];')
        for g, h, lab in ball.edges:
            lines.append(f'  {_vertex_id(g)} -> {_vertex_id(h)} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines)
    by_depth: dict[int, int] = {}
    for depth in ball.vertices.values():
        by_depth[depth] = by_depth.get(depth, 0) + 1
    return {
        "group": args.group,
        "radius": args.radius,
        "vertices": len(ball),
        "edges": len(ball.edges),
        "vertices_by_depth": {str(k): v for k, v in sorted(by_depth.items())},
    }


def cmd_cosets(args):
    ball = groups.bfs_ball(groups.standard_generators(args.group), args.radius)
    sub = args.subgroup
    n = groups.coset_count(ball, lambda g: groups.membership(g, sub))
    return {"group": args.group, "subgroup": sub, "radius": args.radius, "ball_size": len(ball), "cosets": n}


def cmd_lorentz_rep(args):
    m = lorentz.rep(_word(args.word))
    return {
        "word": args.word,
        "matrix": _exact_matrix_json(m),
        "integer": lorentz.is_integer_matrix(m),
        "lorentz": lorentz.is_lorentz(m),
    }


def cmd_lorentz_iwasawa(args):
    if args.word is not None:
        m = lorentz.rep(_word(args.word)).astype(float)
    elif args.matrix is not None:
        try:
            m = np.array(json.loads(args.matrix), dtype=float)
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise UsageError(f"malformed 5x5 matrix: {exc}") from exc
        if m.shape != (5, 5):
            raise UsageError("Lorentz matrix must be 5x5")
    else:
        raise UsageError("give --matrix or --word")
    if args.dilation is not None:
        m = lorentz.dilation_matrix(args.dilation) @ m
    f = lorentz.lorentz_iwasawa(m, args.tolerance)
    out = f.to_json()
    out["recomposition_error"] = float(np.abs(f.recompose() - m).max())
    return out


def cmd_extend5(args):
    g = _matrix_or_element(args)
    q = _point(args.point)
    if q is INF:
        raise ValueError("extend5 needs a finite quaternion")
    try:
        t = Fraction(args.t)
    except ValueError as exc:
        raise UsageError(f"bad --t {args.t!r}") from exc
    p = poincare5.Point5(q, t)
    img = poincare5.extend(g, p)
    return {"point": p.to_json(), "image": img.to_json()}


def cmd_angles(args):
    angles = domains.dihedral_angles()
    err = max(abs(angles[k] - domains.EXPECTED_ANGLES[k]) for k in angles)
    ok = err < args.tolerance
    return {"angles": angles, "max_error": err, "match": ok}, 0 if ok else 1


def cmd_euler(args):
    return {
        "face_counts": list(domains.FACE_COUNTS_P),
        "chi_P": domains.euler_characteristic_P(),
        "chi_cube": domains.euler_characteristic_P((8, 12, 6)),
    }


def cmd_chi_orb(args):
    return {
        "group": args.group,
        "chi_orb": str(orbifold.euler_characteristic(args.group)),
        "cusp_chi_orb": str(orbifold.cusp_euler_characteristic(args.group)),
        "chi_orb_5d": str(orbifold.CHI_ORB_5D[args.group]),
    }


def cmd_verify_strata(args):
    reports = orbifold.verify_all(args.group)
    ok = all(r["pass"] for r in reports)
    return {"group": args.group, "strata": reports, "all_pass": ok}, 0 if ok else 1


def cmd_volume(args):
    return domains.volume_mc(args.domain, args.samples, args.seed, args.workers)


def cmd_constants(args):
    return orbifold.constants()


# -- parser -------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quatmod", description="Quaternionic modular groups toolkit (JSON in, JSON out).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(fn=fn)
        return sp

    def group_arg(sp, default="L"):
        sp.add_argument("--group", choices=("L", "H"), default=default)

    def element_args(sp):
        sp.add_argument("--matrix", help='JSON [[a,b],[c,d]] with quaternion strings, e.g. [["0","1"],["1","0"]]')
        sp.add_argument("--word", help='generator word, e.g. "(Ti T)^3"')

    sp = add("reduce", cmd_reduce, "reduce a point into the fundamental domain")
    group_arg(sp)
    sp.add_argument("--point", required=True)
    sp.add_argument("--max-iter", type=int, default=64)

    sp = add("iwasawa", cmd_iwasawa, "Iwasawa factors of a group element")
    element_args(sp)

    sp = add("det", cmd_det, "Dieudonné determinant of a 2x2 quaternionic matrix")
    element_args(sp)

    sp = add("apply", cmd_apply, "Möbius action on a point (or inf)")
    element_args(sp)
    sp.add_argument("--point", required=True)

    sp = add("order", cmd_order, "order of an element in PSL")
    element_args(sp)
    sp.add_argument("--cap", type=int, default=64)

    sp = add("verify-presentation", cmd_verify_presentation, "evaluate every relator of a presentation")
    group_arg(sp)

    sp = add("orbit", cmd_orbit, "Cayley-graph ball around the identity")
    group_arg(sp)
    sp.add_argument("--radius", type=int, default=2)
    sp.add_argument("--output", choices=("json", "dot"), default="json")

    sp = add("cosets", cmd_cosets, "count right cosets of a subgroup met by a Cayley ball")
    group_arg(sp, default="H")
    sp.add_argument("--subgroup", choices=("L", "H"), default="L")
    sp.add_argument("--radius", type=int, default=3)

    sp = add("lorentz-rep", cmd_lorentz_rep, "Lorentz matrix of a word")
    sp.add_argument("--word", required=True)

    sp = add("lorentz-iwasawa", cmd_lorentz_iwasawa, "M = D(r) T(x,y,z) B-hat decomposition")
    sp.add_argument("--word")
    sp.add_argument("--matrix", help="JSON 5x5 row-major matrix")
    sp.add_argument("--dilation", type=float, help="left-multiply by D(r) first")
    sp.add_argument("--tolerance", type=float, default=1e-9)

    sp = add("extend5", cmd_extend5, "Poincaré extension to H^5")
    element_args(sp)
    sp.add_argument("--point", required=True)
    sp.add_argument("--t", required=True, help="height, rational like 1 or 3/2")

    sp = add("angles", cmd_angles, "dihedral angles of the Coxeter simplex")
    sp.add_argument("--tolerance", type=float, default=1e-9)

    add("euler", cmd_euler, "Euler characteristic of the polytope P")

    sp = add("chi-orb", cmd_chi_orb, "orbifold Euler characteristics from the strata tables")
    group_arg(sp)

    sp = add("verify-strata", cmd_verify_strata, "closure order and fixation for every stratum")
    group_arg(sp)

    sp = add("volume", cmd_volume, "Monte Carlo hyperbolic volume")
    sp.add_argument("--domain", choices=("P", "PL", "PH"), default="PL")
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)

    add("constants", cmd_constants, "stored volumes, indices and cover orders")
    return p


def _dump(obj) -> str:
    if isinstance(obj, str):
        return obj
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default)


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, QuaternionF):
        return o.to_json()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OverflowError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(_dump(result))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
