"""Command-line front end: ``treehopf {enumerate,apply,verify,table}``.

Exit codes: 0 success, 1 a verified identity failed, 2 usage or parse
error, 3 a size bound was hit.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Callable, Sequence

from . import grossman_larson as gl
from . import kreimer as k
from .errors import ResourceLimitError, TreeHopfError, TreeSyntaxError
from .linalg import char_poly
from .linspace import LinComb
from .operators import INVOLUTION_MAX, grow_lin, involution_sum, prune_lin
from .serialize import lincomb_to_json, parse_lincomb, poly_to_json
from .trees import (cm_weight, enumerate_forests, enumerate_trees, forest_to_json, labelling_count,
                    tree_counts, tree_to_json)
from .verify import IDENTITIES, run_all, run_identity

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

#: Conservative defaults; ``--force`` lifts them (hard caps still apply).
TREE_BOUND = 8
FOREST_BOUND = 7
VERIFY_BOUND = 6
VERIFY_LIMIT = 8
EIGEN_BOUND = 7


class UsageError(Exception):
    pass


def _bound(value: int, limit: int, what: str, force: bool) -> None:
    if value < 0:
        raise UsageError(f"{what} must be nonnegative")
    if value > limit and not force:
        raise ResourceLimitError(f"{what} {value} exceeds the default bound {limit}; pass --force to override")


def _emit(obj: Any, fmt: str, text: Callable[[], str]) -> None:
    if fmt == "json":
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        print(text())


# -- enumerate ------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    if args.kind == "trees":
        _bound(args.n, TREE_BOUND, "tree degree", args.force)
        items = enumerate_trees(args.n)
        texts, js = [t.text for t in items], [tree_to_json(t) for t in items]
    else:
        _bound(args.n, FOREST_BOUND, "forest degree", args.force)
        items = enumerate_forests(args.n)
        texts, js = [u.text for u in items], [forest_to_json(u) for u in items]
    if args.format == "json":
        _emit({"kind": args.kind, "n": args.n, "count": len(items), "items": js}, "json", str)
    else:
        print(f"# {len(items)} {args.kind} of degree {args.n}", file=sys.stderr)
        print("\n".join(texts))
    return EXIT_OK


# -- apply ----------------------------------------------------------------------

def _tree_input(text: str) -> LinComb:
    return parse_lincomb(text, "tree")


def _forest_input(text: str) -> LinComb:
    return parse_lincomb(text, "forest")


def _coproduct_cuts(x: LinComb) -> LinComb:
    acc = LinComb()
    for t, c in x.items():
        acc = acc + k.coproduct_cuts(t) * c
    return acc


def _glprod(x: LinComb, y: LinComb) -> LinComb:
    return gl.gl_mul(x, y)


# op name -> (input parser per argument, function)
OPERATIONS: dict[str, tuple[tuple[Callable[[str], LinComb], ...], Callable[..., LinComb]]] = {
    "grow": ((_tree_input,), grow_lin),
    "prune": ((_tree_input,), prune_lin),
    "N": ((_forest_input,), k.derivation_N),
    "P": ((_forest_input,), k.derivation_P),
    "D": ((_forest_input,), k.derivation_D),
    "coproduct": ((_forest_input,), k.coproduct_recursive),
    "coproduct-cuts": ((_tree_input,), _coproduct_cuts),
    "glprod": ((_tree_input, _tree_input), _glprod),
    "glcop": ((_tree_input,), gl.gl_coproduct_lin),
    "chi": ((_tree_input,), gl.chi),
}


def _read_args(raw: Sequence[str], arity: int) -> list[str]:
    # a lone "-" supplies every element from stdin, one per line for binary ops
    if list(raw) == ["-"]:
        lines = [line.strip() for line in sys.stdin.read().splitlines() if line.strip()]
        raw = [" ".join(lines)] if arity == 1 else lines
    elif raw.count("-") == 1:
        raw = [sys.stdin.read().strip() if r == "-" else r for r in raw]
    if len(raw) != arity:
        raise UsageError(f"expected {arity} element(s), got {len(raw)}")
    return list(raw)


def cmd_apply(args) -> int:
    parsers, fn = OPERATIONS[args.op]
    texts = _read_args(args.elements, len(parsers))
    inputs = [p(t) for p, t in zip(parsers, texts)]
    result = fn(*inputs)
    _emit({"op": args.op, "input": texts, "result": lincomb_to_json(result)}, args.format,
          lambda: result.text)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def _report_text(r, timing: bool) -> str:
    status = "ok" if r.ok else "FAIL"
    line = f"{r.identity:<24} d<={r.max_degree}  checked {r.checked:>6}  failed {r.failed:>4}  {status}"
    if timing and r.wall_time is not None:
        line += f"  {r.wall_time:.2f}s"
    out = [line]
    for f in r.failures:
        out.append(f"    input {' | '.join(f['input'])}: {f['lhs']}  !=  {f['rhs']}")
    return "\n".join(out)


def cmd_verify(args) -> int:
    if args.list:
        for name in sorted(IDENTITIES):
            ident = IDENTITIES[name]
            print(f"{name:<24} [{ident.bound}]  {ident.statement}")
        return EXIT_OK
    if args.identity is None:
        raise UsageError("name an identity or 'all' (see --list)")
    _bound(args.max_degree, VERIFY_LIMIT, "verify degree", args.force)
    if args.identity == "all":
        reports = run_all(args.max_degree)
    elif args.identity in IDENTITIES:
        reports = [run_identity(args.identity, args.max_degree)]
    else:
        raise UsageError(f"unknown identity {args.identity!r}; available: all, {', '.join(sorted(IDENTITIES))}")
    failed = sum(1 for r in reports if not r.ok)
    payload = {"max_degree": args.max_degree, "identities": len(reports), "failed_identities": failed,
               "reports": [r.to_json(args.timing) for r in reports]}
    _emit(payload, args.format,
          lambda: "\n".join([_report_text(r, args.timing) for r in reports]
                            + [f"{len(reports) - failed}/{len(reports)} identities hold"]))
    return EXIT_OK if failed == 0 else EXIT_FAIL


# -- table ----------------------------------------------------------------------

def _per_tree_table(n: int, value: Callable) -> tuple[list[dict], str]:
    rows, lines = [], []
    width = max(len("total"), n + 2 + n)
    for kk in range(n + 1):
        ts = enumerate_trees(kk)
        vals = [value(t) for t in ts]
        for t, v in zip(ts, vals):
            lines.append(f"{kk:>3}  {t.text:<{width}}  {v}")
        lines.append(f"{kk:>3}  {'total':<{width}}  {sum(vals)}")
        rows.append({"k": kk, "trees": [{"tree": t.text, "value": v} for t, v in zip(ts, vals)],
                     "total": sum(vals)})
    return rows, "\n".join(lines)


def cmd_table(args) -> int:
    name, n = args.name, args.max
    if name == "tree-counts":
        _bound(n, TREE_BOUND, "tree degree", args.force)
        counts = tree_counts(n)
        rows = [{"n": i, "count": c} for i, c in enumerate(counts)]
        text = "\n".join(f"{i:>3}  {c}" for i, c in enumerate(counts))
    elif name == "cm-weights":
        _bound(n, TREE_BOUND, "tree degree", args.force)
        rows, text = _per_tree_table(n, cm_weight)
    elif name == "labelling-counts":
        _bound(n, TREE_BOUND, "tree degree", args.force)
        rows, text = _per_tree_table(n, labelling_count)
    elif name == "involution-sums":
        if n < 1:
            raise UsageError("involution-sums needs max >= 1")
        _bound(n, min(TREE_BOUND, INVOLUTION_MAX), "k", args.force)
        rows = [{"k": kk, "involution_sum": involution_sum(kk),
                 "tree_sum": sum(labelling_count(t) for t in enumerate_trees(kk))} for kk in range(1, n + 1)]
        text = "\n".join(f"{r['k']:>3}  {r['involution_sum']:>10}  {r['tree_sum']:>10}"
                         + ("" if r["involution_sum"] == r["tree_sum"] else "  differ") for r in rows)
    else:  # eigen
        if n < 1:
            raise UsageError("eigen needs max >= 1")
        _bound(n, EIGEN_BOUND, "k", args.force)
        rows, lines = [], []
        for kk in range(1, n + 1):
            got = char_poly(k.pn_matrix(kk))
            want = k.pn_char_poly_predicted(kk)
            rows.append({"k": kk, "top_eigenvalue": math.comb(kk + 1, 2), "char_poly": poly_to_json(got),
                         "matches": got == want})
            lines.append(f"{kk:>3}  top {math.comb(kk + 1, 2):>4}  dim {len(got) - 1:>4}  "
                         f"{'matches' if got == want else 'DIFFERS'}")
        text = "\n".join(lines)
    _emit({"table": name, "max": n, "rows": rows}, args.format, lambda: text)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def common(default_format: str) -> argparse.ArgumentParser:
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=["text", "json"], default=default_format)
        c.add_argument("--force", action="store_true", help="lift the default size bounds")
        return c

    p = argparse.ArgumentParser(prog="treehopf", description="Rooted-tree Hopf algebras: enumerate, apply, verify.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common("text")], help="list canonical trees or forests")
    e.add_argument("kind", choices=["trees", "forests"])
    e.add_argument("n", type=int, help="degree: trees with n+1 vertices, forests with n vertices")
    e.set_defaults(func=cmd_enumerate)

    a = sub.add_parser("apply", parents=[common("text")], help="apply an operator to elements ('-' reads stdin)")
    a.add_argument("op", choices=list(OPERATIONS))
    a.add_argument("elements", nargs="+")
    a.set_defaults(func=cmd_apply)

    v = sub.add_parser("verify", parents=[common("json")], help="check identities exhaustively up to a degree")
    v.add_argument("identity", nargs="?")
    v.add_argument("--max-degree", type=int, default=VERIFY_BOUND)
    v.add_argument("--timing", action="store_true", help="include wall time")
    v.add_argument("--list", action="store_true", help="list identities and their bound semantics")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", parents=[common("text")], help="print a table of counts or weights")
    t.add_argument("name", choices=["tree-counts", "cm-weights", "labelling-counts", "involution-sums", "eigen"])
    t.add_argument("max", type=int)
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"treehopf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TreeSyntaxError as exc:
        print(f"treehopf: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"treehopf: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TreeHopfError as exc:
        print(f"treehopf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
