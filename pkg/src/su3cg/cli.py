"""Command-line front end: ``su3cg <subcommand> ...``.

Exit status is 0 on success, 2 on a usage error and 3 when a verification
suite fails.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import cache
from .core import casimir_f, casimir_g, dimension, enumerate_basis, irrep, parse_rational, top_point
from .exact import Surd, fmt_rational
from .generators import OPERATORS, build_generator_matrices

SCHEMA = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


def surd_json(v: Optional[Surd]) -> Optional[Dict[str, int]]:
    return None if v is None else v.to_json()


def q(x: Fraction) -> str:
    return fmt_rational(Fraction(x))


def record(command: str, inputs: Dict[str, Any], results: Any, provenance: str, cache_hit: bool = False) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "results": results,
        "provenance": provenance,
        "cache_hit": cache_hit,
    }


# subcommands -------------------------------------------------------------

def cmd_dim(a) -> Dict[str, Any]:
    s = irrep(a.P, a.Q)
    return record("dim", {"P": s.P, "Q": s.Q}, {"dimension": dimension(s)}, "closed-form")


def cmd_casimir(a) -> Dict[str, Any]:
    s = irrep(a.P, a.Q)
    f, g = casimir_f(s), casimir_g(s)
    return record("casimir", {"P": s.P, "Q": s.Q}, {"f": q(f), "g": q(g), "f_float": float(f), "g_float": float(g)}, "closed-form")


def cmd_weights(a) -> Dict[str, Any]:
    s = irrep(a.P, a.Q)
    states = [{"i": q(st.i), "i3": q(st.i3), "y": q(st.y)} for st in enumerate_basis(s).states]
    return record("weights", {"P": s.P, "Q": s.Q}, {"count": len(states), "states": states}, "closed-form")


def cmd_series(a) -> Dict[str, Any]:
    from .series import series_general

    s1, s2 = irrep(a.P1, a.Q1), irrep(a.P2, a.Q2)
    terms = [{"P": t.irrep.P, "Q": t.irrep.Q, "multiplicity": t.multiplicity, "dimension": dimension(t.irrep)}
             for t in series_general(s1, s2)]
    return record("series", {"s1": list(s1), "s2": list(s2)}, {"terms": terms}, "closed-form")


def cmd_gen(a) -> Dict[str, Any]:
    s = irrep(a.P, a.Q)
    ms = build_generator_matrices(s)
    ops = OPERATORS if a.op == "all" else (a.op,)
    out = {}
    for op in ops:
        m = ms[op]
        if a.dense:
            out[op] = m.to_dense().tolist()
        else:
            out[op] = [{"row": r, "col": c, "value": v.to_json(), "float": float(v)} for r, c, v in m.triplets()]
    states = [{"i": q(st.i), "i3": q(st.i3), "y": q(st.y)} for st in ms.states]
    return record("gen", {"P": s.P, "Q": s.Q, "op": a.op, "dense": bool(a.dense)},
                  {"dimension": len(states), "states": states, "matrices": out}, "closed-form")


def _isf_payload(s1, s2, s) -> List[dict]:
    from .isoscalar import isoscalar_tables
    from .core import iy_nodes

    out = []
    for tab in isoscalar_tables(s1, s2, s):
        for node in iy_nodes(s):
            row = tab.rows[node]
            ex = row.exact or (None,) * len(row.points)
            out.append({
                "gamma": tab.gamma,
                "i": q(row.i),
                "y": q(row.y),
                "entries": [
                    {"mu": q(p.mu), "j": q(p.j), "k": q(p.k), "value": surd_json(e), "float": float(v)}
                    for p, v, e in zip(row.points, row.values, ex)
                ],
            })
    return out


def isf_records(s1, s2, s):
    """All rows of (s1, s2, s) plus whether they came from the cache."""
    hit = cache.load(s1, s2, s)
    if hit is not None:
        return hit, True
    payload = _isf_payload(s1, s2, s)
    cache.store(s1, s2, s, payload)
    return payload, False


def cmd_isf(a) -> Dict[str, Any]:
    from .isoscalar import NotInSeries, _check_series

    s1, s2, s = irrep(a.P1, a.Q1), irrep(a.P2, a.Q2), irrep(a.P, a.Q)
    try:
        mult = _check_series(s1, s2, s)
    except NotInSeries as e:
        raise UsageError(str(e))
    if a.gamma is not None and not 1 <= a.gamma <= mult:
        raise UsageError(f"gamma must lie in 1..{mult}")
    ti, ty = top_point(s)
    i = parse_rational(a.i) if a.i is not None else None
    y = parse_rational(a.y) if a.y is not None else None
    if a.all:
        want_i = want_y = None
    else:
        want_i = i if i is not None else (ti if y is None else None)
        want_y = y if y is not None else (ty if i is None else None)
    rows, hit = isf_records(s1, s2, s)
    sel = [r for r in rows
           if (a.gamma is None or r["gamma"] == a.gamma)
           and (want_i is None or r["i"] == q(want_i))
           and (want_y is None or r["y"] == q(want_y))]
    if not sel:
        raise UsageError("no row of the diagram matches the requested (i, y)")
    inputs = {"s1": list(s1), "s2": list(s2), "s": list(s), "gamma": a.gamma,
              "i": None if want_i is None else q(want_i), "y": None if want_y is None else q(want_y)}
    return record("isf", inputs, {"multiplicity": mult, "rows": sel}, "recurrence", hit)


def cmd_cgc(a) -> Dict[str, Any]:
    from .cgc import BadState, CgcQuery, cg_coefficient
    from .isoscalar import NotInSeries

    s1, s2, s = irrep(a.P1, a.Q1), irrep(a.P2, a.Q2), irrep(a.P, a.Q)
    pr = parse_rational
    st1 = (pr(a.i1), pr(a.m1), pr(a.y1))
    st2 = (pr(a.i2), pr(a.m2), pr(a.y2))
    st = (pr(a.i), pr(a.i3), pr(a.y))
    try:
        v = cg_coefficient(CgcQuery(s1, st1, s2, st2, s, a.gamma, st))
    except (NotInSeries, BadState) as e:
        raise UsageError(str(e))
    inputs = {"s1": list(s1), "state1": [q(x) for x in st1], "s2": list(s2), "state2": [q(x) for x in st2],
              "s": list(s), "gamma": a.gamma, "state": [q(x) for x in st]}
    res = {
        "value": surd_json(v.exact),
        "float": v.value,
        "isoscalar": surd_json(v.alpha_exact),
        "isoscalar_float": v.alpha,
        "su2": v.su2.to_json(),
        "su2_float": float(v.su2),
        "reason": v.reason,
    }
    return record("cgc", inputs, res, "recurrence")


def cmd_verify(a) -> Dict[str, Any]:
    from .verify import run

    res = run(a.suite, a.max_dim)
    body = [{"suite": r.suite, "passed": r.passed, "max_residual": r.max_residual,
             "checked": r.checked, "tolerance": r.tolerance} for r in res]
    prov = "oracle" if a.suite in ("oracle", "all") else "recurrence"
    return record("verify", {"suite": a.suite, "max_dim": a.max_dim},
                  {"passed": all(r.passed for r in res), "suites": body}, prov)


# output ---------------------------------------------------------------------

def _fmt_surd(d: Optional[dict], fallback: float) -> str:
    if d is None:
        return f"{fallback:.15g}"
    return str(Surd.from_json(d))


def render_text(rec: Dict[str, Any]) -> str:
    c, r = rec["command"], rec["results"]
    if c == "dim":
        return str(r["dimension"])
    if c == "casimir":
        return f"f={r['f']} g={r['g']}"
    if c == "weights":
        return "\n".join(f"i={s['i']} i3={s['i3']} y={s['y']}" for s in r["states"])
    if c == "series":
        return " + ".join(
            (f"{t['multiplicity']}x" if t["multiplicity"] > 1 else "") + f"({t['P']},{t['Q']})" for t in r["terms"]
        )
    if c == "gen":
        lines = []
        for op, m in r["matrices"].items():
            lines.append(f"{op}:")
            if rec["inputs"]["dense"]:
                lines += ["  " + " ".join(f"{x:.6g}" for x in row) for row in m]
            else:
                lines += [f"  ({e['row']},{e['col']}) {_fmt_surd(e['value'], e['float'])}" for e in m]
        return "\n".join(lines)
    if c == "isf":
        lines = []
        for row in r["rows"]:
            lines.append(f"gamma={row['gamma']} i={row['i']} y={row['y']}")
            for e in row["entries"]:
                lines.append(f"  mu={e['mu']} j={e['j']} k={e['k']}  {_fmt_surd(e['value'], e['float'])}")
        return "\n".join(lines)
    if c == "cgc":
        txt = _fmt_surd(r["value"], r["float"])
        return txt + (f"  ({r['reason']})" if r["reason"] else "")
    if c == "verify":
        return "\n".join(
            f"{'PASS' if s['passed'] else 'FAIL'} {s['suite']} max_residual={s['max_residual']:.3e} "
            f"checked={s['checked']}" for s in r["suites"]
        )
    return json.dumps(r)


def emit(rec: Dict[str, Any], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "jsonl":
        out.write(json.dumps(rec) + "\n")
    else:
        out.write(render_text(rec) + "\n")


# parser -----------------------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="su3cg", description="SU(3) representation data and coupling coefficients.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "jsonl"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, hlp in (("dim", cmd_dim, "dimension of D(P,Q)"),
                          ("casimir", cmd_casimir, "Casimir eigenvalues f and g"),
                          ("weights", cmd_weights, "canonical basis states")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("P", type=_nonneg)
        sp.add_argument("Q", type=_nonneg)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("series", parents=[common], help="Clebsch-Gordan series of a product")
    for lab in ("P1", "Q1", "P2", "Q2"):
        sp.add_argument(lab, type=_nonneg)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("gen", parents=[common], help="generator matrices")
    sp.add_argument("P", type=_nonneg)
    sp.add_argument("Q", type=_nonneg)
    sp.add_argument("--op", choices=OPERATORS + ("all",), default="all")
    sp.add_argument("--dense", action="store_true", help="emit dense float matrices")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("isf", parents=[common], help="isoscalar factors")
    for lab in ("P1", "Q1", "P2", "Q2", "P", "Q"):
        sp.add_argument(lab, type=_nonneg)
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--i", help="isospin of the row (n or n/d); default: top row")
    sp.add_argument("--y", help="hypercharge of the row (n or n/d)")
    sp.add_argument("--all", action="store_true", help="every row of the diagram")
    sp.set_defaults(func=cmd_isf)

    sp = sub.add_parser("cgc", parents=[common], help="one SU(3) Clebsch-Gordan coefficient")
    for lab in ("P1", "Q1", "P2", "Q2", "P", "Q"):
        sp.add_argument(lab, type=_nonneg)
    sp.add_argument("--gamma", type=int, default=1)
    for lab in ("i1", "m1", "y1", "i2", "m2", "y2", "i", "i3", "y"):
        sp.add_argument(f"--{lab}", required=True)
    sp.set_defaults(func=cmd_cgc)

    sp = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    sp.add_argument("--suite", choices=("commutators", "unitarity", "golden", "closed-form", "oracle", "all"),
                    default="all")
    sp.add_argument("--max-dim", type=int, default=100)
    sp.set_defaults(func=cmd_verify)
    return p


def _glue_negatives(argv: List[str]) -> List[str]:
    # argparse reads "-1/2" as an option; attach it to the preceding flag
    out: List[str] = []
    for tok in argv:
        if out and re.match(r"^-\d", tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negatives(list(sys.argv[1:] if argv is None else argv)))
    try:
        rec = args.func(args)
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"su3cg {args.command}: error: {e}\n")
        return EXIT_USAGE
    emit(rec, args.format)
    if args.command == "verify" and not rec["results"]["passed"]:
        return EXIT_VERIFY
    return 0


if __name__ == "__main__":
    sys.exit(main())
