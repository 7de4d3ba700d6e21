"""Command-line front end.

A manifold is given either as Brieskorn exponents (``2 3 7``) or, as soon as
any argument contains a slash, as Seifert data ``e0 r1 ... rn`` (``-2 1/2 1/2 1/2``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .arith import as_rational, format_rational, sparse_determinant
from .classify import invariants, obstruction_report, search_two_fillable
from .dinv import correction_term
from .errors import UnsupportedCase, ValidationError
from .mlemma import lemma_check
from .plumbing import intersection_matrix
from .seifert import (BrieskornData, SeifertData, brieskorn_to_seifert, euler_number,
                      recognize_brieskorn, reverse_orientation)
from .surgery import check_rotation_vector, d3, d3_table, format_vector

EXIT_VALIDATION = 2
EXIT_UNSUPPORTED = 3


def parse_manifold(args: Sequence[str]) -> tuple[SeifertData, Optional[BrieskornData]]:
    if not args:
        raise ValidationError("no manifold given")
    if any("/" in x for x in args):
        try:
            e0 = int(args[0])
        except ValueError:
            raise ValidationError(f"central framing must be an integer, got {args[0]!r}") from None
        return SeifertData(e0, tuple(as_rational(x) for x in args[1:])), None
    try:
        a = tuple(int(x) for x in args)
    except ValueError:
        raise ValidationError(f"Brieskorn exponents must be integers, got {' '.join(args)}") from None
    b = BrieskornData(a)
    return brieskorn_to_seifert(b), b


def _fmt(x) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


class Output:
    def __init__(self, color: bool):
        self.lines: list[str] = []
        self.color = color

    def bold(self, s: str) -> str:
        return f"\033[1m{s}\033[0m" if self.color else s

    def line(self, s: str = ""):
        self.lines.append(s)

    def table(self, rows: Sequence[tuple[str, object]], title: Optional[str] = None):
        if title:
            self.line(self.bold(title))
        w = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            self.line(f"  {k.ljust(w)}  {_fmt(v)}")

    def grid(self, header: Sequence[str], rows: Sequence[Sequence[object]]):
        cells = [[_fmt(x) for x in r] for r in rows]
        widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
        self.line(self.bold("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()))
        for r in cells:
            self.line("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _model(args) -> tuple[SeifertData, Optional[BrieskornData]]:
    s, b = parse_manifold(args.manifold)
    if args.reverse:
        s, b = reverse_orientation(s), None
    e = euler_number(s)
    if e >= 0:
        raise ValidationError(f"{s} has e = {format_rational(e)} >= 0: no negative-definite standard graph "
                              "(try --reverse, or `report`, which picks the orientation itself)")
    return s, b or recognize_brieskorn(s)


def _d_or_none(g) -> Optional[Fraction]:
    if abs(sparse_determinant(intersection_matrix(g))) != 1:
        return None
    return correction_term(g)


def _seifert_json(s: SeifertData):
    return {"e0": s.e0, "multipliers": [format_rational(r) for r in s.multipliers]}


def cmd_info(args, out: Output):
    s, b = _model(args)
    inv = invariants(s)
    d = _d_or_none(inv.graph)
    data = {"manifold": _seifert_json(s), "brieskorn": list(b.a) if b else None,
            "e0": s.e0, "euler": format_rational(euler_number(s)), "d": _fmt(d) if d is not None else None,
            "count": inv.count, "tw": inv.twisting.tw, "d3_can": format_rational(inv.d3_can),
            "gamma_type": str(inv.twisting.gamma_type), "m": inv.presentation.m}
    if args.json:
        return data
    title = str(s) + (f" = {b}" if b else "")
    out.table([("e0", s.e0), ("e", euler_number(s)), ("d", d), ("count", inv.count),
               ("tw", inv.twisting.tw), ("d3(xi_can)", inv.d3_can),
               ("Gamma'", inv.twisting.gamma_type), ("m", inv.presentation.m)], title)


def cmd_graph(args, out: Output):
    s, _ = _model(args)
    g = invariants(s).graph
    if args.dot:
        out.lines.append(g.to_dot().rstrip("\n"))
        return None
    if args.json:
        return {**g.to_json(), "edges": [list(e) for e in g.edges()]}
    out.table([("center", f"v0: {g.center}")] +
              [(f"leg {i + 1}", " ".join(f"v{v}: {c}" for v, c in zip(g.leg_ids(i), leg)))
               for i, leg in enumerate(g.legs)], str(s))


def cmd_presentation(args, out: Output):
    s, _ = _model(args)
    inv = invariants(s)
    p = inv.presentation
    if args.json:
        return {**p.to_json(), "twisting": inv.twisting.to_json()}
    out.line(out.bold(f"{s}: Gamma' {inv.twisting.gamma_type}, m = {p.m}"))
    out.grid(["vertex", "knot", "framing", "tb_max", "budget"],
             [(f"v{c.vertex}", str(c.knot), c.framing, c.tb_max, c.budget) for c in p.components])
    if p.m:
        out.line("Q =")
        w = max(len(str(x)) for row in p.q.rows for x in row)
        for row in p.q.rows:
            out.line("  " + " ".join(str(x).rjust(w) for x in row))


def cmd_d3(args, out: Output):
    s, _ = _model(args)
    p = invariants(s).presentation
    if args.vector is not None:
        v = tuple(int(x) for x in args.vector.split(",")) if args.vector else ()
        check_rotation_vector(p, v)
        vectors, values = [v], [d3(p, v)]
    else:
        vectors, values = d3_table(p)
    if args.json:
        return [{"v": list(v), "d3": format_rational(x)} for v, x in zip(vectors, values)]
    out.grid(["v", "d3"], [(format_vector(v), x) for v, x in zip(vectors, values)])


def cmd_dinv(args, out: Output):
    s, _ = _model(args)
    d = correction_term(invariants(s).graph, args.method)
    if args.json:
        return {"manifold": _seifert_json(s), "d": format_rational(d), "method": args.method}
    out.table([("d", d)], str(s))


def cmd_count(args, out: Output):
    s, _ = _model(args)
    inv = invariants(s)
    if args.json:
        return {"manifold": _seifert_json(s), "count": inv.count, "budgets": list(inv.presentation.budgets)}
    out.table([("count", inv.count), ("budgets", " ".join(map(str, inv.presentation.budgets)) or "-")], str(s))


def cmd_tw(args, out: Output):
    s, _ = _model(args)
    t = invariants(s).twisting
    if args.json:
        return t.to_json()
    out.table([("Gamma'", t.gamma_type), ("d1", t.d1), ("d2", t.d2), ("tw", t.tw),
               ("consumed", " ".join(f"v{v}" for v in sorted(t.consumed)) or "-")], str(s))


def cmd_classify(args, out: Output):
    found = search_two_fillable(args.max_a, n=args.n, fillable=args.fillable, vanishing_d=not args.any_d)
    if args.json:
        return [list(b.a) for b in found]
    for b in found:
        out.line(str(b))


def cmd_lemma_check(args, out: Output):
    res = lemma_check(args.trials, args.seed, args.max_rank)
    if args.json:
        return {"trials": res.trials, "hits": res.hits, "failures": len(res.failures)}
    out.line(res.summary())


def cmd_report(args, out: Output):
    s, _ = parse_manifold(args.manifold)
    rep = obstruction_report(s)
    if args.json:
        return rep.to_json()
    data = rep.to_json()
    m = data["manifold"]
    out.table([("given", str(rep.given)), ("orientation", m["orientation"]), ("model", str(rep.model)),
               ("brieskorn", str(rep.brieskorn) if rep.brieskorn else None), ("e0", rep.e0),
               ("e", rep.euler), ("d", rep.d), ("count", rep.fillable_count), ("tw", rep.tw),
               ("d3(xi_can)", rep.d3_canonical), ("families", ", ".join(data["families"]) or "-")], "evidence")
    out.line(out.bold("verdicts"))
    for v in rep.verdicts:
        out.line(f"  {v.statement}: {v.verdict}")
        for q in v.qualifiers:
            out.line(f"    - {q}")


COMMANDS = {
    "info": (cmd_info, "e0, e, d, count, tw and d3(xi_can)"),
    "graph": (cmd_graph, "standard plumbing graph"),
    "presentation": (cmd_presentation, "complete blow-down and stabilization budgets"),
    "d3": (cmd_d3, "d3 of the fillable structures"),
    "dinv": (cmd_dinv, "correction term d"),
    "count": (cmd_count, "number of fillable structures"),
    "tw": (cmd_tw, "blow-down subgraph type and twisting number"),
    "classify": (cmd_classify, "Brieskorn triples with two fillable structures and d = 0"),
    "lemma-check": (cmd_lemma_check, "randomized box-minimum check at +-W"),
    "report": (cmd_report, "obstruction report"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="brieskorn", description="Invariants of Brieskorn spheres and "
                                 "negative-definite Seifert fibred spaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")
    sub = ap.add_subparsers(dest="command", required=True)
    manifold_cmds = {"info", "graph", "presentation", "d3", "dinv", "count", "tw", "report"}
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name in manifold_cmds:
            p.add_argument("manifold", nargs="+", help="Brieskorn exponents, or e0 r1 ... rn")
            if name != "report":
                p.add_argument("--reverse", action="store_true", help="reverse the orientation first")
        if name == "graph":
            p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
        elif name == "d3":
            p.add_argument("--vector", help="comma-separated rotation vector (default: all)")
        elif name == "dinv":
            p.add_argument("--method", choices=("auto", "box", "tau"), default="auto")
        elif name == "classify":
            p.add_argument("--max-a", type=int, default=50)
            p.add_argument("--n", type=int, default=3)
            p.add_argument("--fillable", type=int, default=2)
            p.add_argument("--any-d", action="store_true", help="drop the e0 = -1, d = 0 filter")
        elif name == "lemma-check":
            p.add_argument("--trials", type=int, default=500)
            p.add_argument("--seed", type=int, default=1)
            p.add_argument("--max-rank", type=int, default=6)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    to_file = args.out is not None
    color = not to_file and not args.json and sys.stdout.isatty() and "NO_COLOR" not in os.environ
    out = Output(color)
    fn = COMMANDS[args.command][0]
    try:
        data = fn(args, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnsupportedCase as exc:
        print(f"unsupported: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    text = json.dumps(data, indent=2) + "\n" if args.json and not getattr(args, "dot", False) else out.text()
    if to_file:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
