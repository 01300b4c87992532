"""Command-line interface: ``epspace <command> ...`` or ``python -m epspace``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .configs import load_config
from .constructions import PreconditionError, SmallnessError, c5_witness
from .harness import SUITES, run_suite
from .norm import DualNormDidNotConverge, dual_norm, norm_bb, norm_exhaustive, section_extreme_points
from .numeric import format_number
from .ordinals import parse_ordinal
from .schreier import ResourceLimitError, format_set, schreier_enumerate, schreier_member
from .space import SparseVector, StructuralError, Unit, config_validate


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _fn_json(fn):
    if fn is None:
        return None
    if isinstance(fn, Unit):
        return {"unit": fn.n}
    return {"admissible": [{str(n): g for n, g in m.segments} for m in fn.measures]}


def _emit(args, payload: dict, lines: Sequence[str]):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_schreier(args) -> int:
    alpha = parse_ordinal(args.alpha)
    if args.action == "member":
        print("true" if schreier_member(_ints(args.set), alpha) else "false")
    else:
        for F in schreier_enumerate(alpha, args.max_n, cap=args.cap):
            print(format_set(F))
    return 0


def cmd_norm(args) -> int:
    cfg = load_config(args.config)
    x = SparseVector.parse(args.vec)
    res = (norm_exhaustive if args.engine == "exhaustive" else norm_bb)(x, cfg)
    payload = {
        "value": format_number(res.value),
        "witness": _fn_json(res.witness),
        "stats": {"nodes": res.nodes, "pruned": res.pruned},
    }
    _emit(args, payload, [f"value = {format_number(res.value)}", f"witness = {res.witness}"])
    return 0


def cmd_dualnorm(args) -> int:
    cfg = load_config(args.config)
    f = dict(SparseVector.parse(args.functional))
    try:
        res = dual_norm(f, cfg, max_iter=args.max_iter)
    except DualNormDidNotConverge as e:
        print(f"did not converge: value in [{e.lower}, {e.upper}]", file=sys.stderr)
        return 1
    payload = {
        "value": format_number(res.value),
        "witness_point": res.witness_point.format(),
        "cuts_used": res.cuts_used,
        "iterations": res.iterations,
        "multipliers": [
            {"sign": s, "functional": _fn_json(fn), "weight": format_number(y)} for s, fn, y in res.multipliers
        ],
    }
    _emit(args, payload, [f"value = {format_number(res.value)}", f"witness = {res.witness_point.format()}"])
    return 0


def cmd_extreme(args) -> int:
    cfg = load_config(args.config)
    verts = section_extreme_points(cfg, _ints(args.coords))
    payload = {"count": len(verts), "vertices": [v.format() for v in verts]}
    _emit(args, payload, [f"count = {len(verts)}"] + [v.format() for v in verts])
    return 0


def cmd_witness(args) -> int:
    cfg = load_config(args.config)
    try:
        fam = c5_witness(_ints(args.set), parse_ordinal(args.alpha), args.eps, cfg, strict=args.strict)
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 1
    except SmallnessError as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return 1
    F, val = fam.largest_small
    payload = {
        "k": fam.k,
        "order": str(fam.order),
        "offset": fam.offset,
        "D": format_number(fam.D),
        "mu": [{str(m): format_number(w) for m, w in mu.atoms} for mu in fam.mus],
        "tau": [None if t is None else {str(n): g for n, g in t.segments} for t in fam.taus],
        "u": {str(m): v.format() for m, v in fam.u.items()},
        "checks": fam.checks,
        "largest_small_set": {"F": list(F), "norm": format_number(val)},
    }
    lines = [f"D = {format_number(fam.D)}", f"k = {fam.k}, averages of order {fam.order}, offset {fam.offset}"]
    lines += [f"u_{m} = {v.format() or '0'}" for m, v in fam.u.items()]
    lines += [f"tau_{i} = {t}" for i, t in enumerate(fam.taus, 1)]
    lines += [f"check {k}: {'ok' if v else 'FAIL'}" for k, v in fam.checks.items()]
    lines.append(f"largest S_{fam.alpha} sum: F = {format_set(F)}, norm = {format_number(val)}")
    _emit(args, payload, lines)
    return 0


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    suites = [s for s in args.suite.split(",") if s]
    rep = run_suite(cfg, suites, seed=args.seed, count=args.count)
    for part in rep.parts:
        print(part.summary())
    print(rep.summary())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    return 0 if rep.ok else 1


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    rep = config_validate(cfg, growth=args.growth)
    if rep.ok:
        print("ok")
        return 0
    for v in rep.violations:
        print(v)
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="epspace", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("schreier", help="Schreier family membership and enumeration")
    ssub = sp.add_subparsers(dest="action", required=True)
    m = ssub.add_parser("member")
    m.add_argument("--alpha", required=True)
    m.add_argument("--set", required=True, help="comma-separated, e.g. 2,3,4")
    e = ssub.add_parser("enum")
    e.add_argument("--alpha", required=True)
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--cap", type=int, default=10**6)
    sp.set_defaults(func=cmd_schreier)

    def with_config(p):
        p.add_argument("--config", default="T", help="builtin T, G, W or a config file path")
        return p

    n = with_config(sub.add_parser("norm", help="norm of a finitely supported vector"))
    n.add_argument("--vec", required=True, help="coord:value pairs, e.g. 3:1,6:-1/2")
    n.add_argument("--engine", choices=("bb", "exhaustive"), default="bb")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_norm)

    d = with_config(sub.add_parser("dualnorm", help="dual norm of a coordinate functional"))
    d.add_argument("--func", dest="functional", required=True, help="coord:coefficient pairs")
    d.add_argument("--max-iter", type=int, default=1000)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_dualnorm)

    x = with_config(sub.add_parser("extreme", help="vertices of a coordinate section of the unit ball"))
    x.add_argument("--coords", required=True)
    x.add_argument("--json", action="store_true")
    x.set_defaults(func=cmd_extreme)

    w = with_config(sub.add_parser("witness", help="witness family on block indices M"))
    w.add_argument("--set", required=True, help="block indices M, comma-separated")
    w.add_argument("--alpha", default="1")
    w.add_argument("--eps", default="9/10")
    w.add_argument("--strict", action="store_true")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_witness)

    c = with_config(sub.add_parser("check", help="run check suites"))
    c.add_argument("--suite", default=",".join(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--count", type=int, default=None, help="instances per check (default per-suite)")
    c.add_argument("--json", default=None, metavar="FILE")
    c.set_defaults(func=cmd_check)

    v = with_config(sub.add_parser("validate", help="report violated config constraints"))
    v.add_argument("--growth", action="store_true")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, StructuralError, ResourceLimitError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
