"""Command-line front door.

Subcommands: omega (curvature of two operator expressions), cocycle
(alternating trace cocycles), residue (Wodzicki residue of a symbol
expression), verify (randomized identity sweeps) and repro (fixed
replication targets).  Output is either a plain-text table or a single
structured JSON document; identical configuration yields byte-identical
structured output.

Exit codes: 0 success, 1 verification/assertion failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import repro
from .errors import OperatorParseError, PdoCyclesError, ReproAssertionFailed
from .exprparse import (
    operator_from_document,
    parse_expression,
    eval_operator,
    eval_symbol,
    scalar_to_json,
    matrix_to_json,
    symbol_from_document,
)
from .forms import chern_cocycle, chern_permutation_table, curvature
from .lattice import LatticeOperator, exact_rank, op_z_power
from .scalars import GaussianRational
from .symbols import DEFAULT_DEPTH, radul_cocycle, wodzicki_residue


@dataclass
class RunConfig:
    command: str
    dim: int = 1
    seed: int = 0
    samples: int = 50
    degree: int = 3
    depth: int = DEFAULT_DEPTH
    k: int = 1
    fmt: str = "table"

    def validate(self):
        if self.dim < 1:
            raise ValueError("--dim must be >= 1")
        if self.depth < 2:
            raise ValueError("--depth must be >= 2 for residue computations")
        if self.k < 1:
            raise ValueError("--k must be >= 1")
        if self.samples < 1:
            raise ValueError("--samples must be >= 1")

    def echo(self) -> dict:
        return {"command": self.command, "dim": self.dim, "seed": self.seed,
                "samples": self.samples, "degree": self.degree,
                "depth": self.depth, "k": self.k, "format": self.fmt}


def _emit(doc: dict, lines: list[str], fmt: str):
    if fmt == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _load_operands(path: str | None, dim: int) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    out = {}
    for name, doc in raw.items():
        op = operator_from_document(doc)
        if op.dim != dim:
            raise OperatorParseError(
                f"operand {name!r} has dim {op.dim}, run uses {dim}")
        out[name] = op
    return out


def _sorted_entries(op: LatticeOperator):
    entries = []
    for j, prof in sorted(op.diagonals.items()):
        for k in prof.window_modes():
            entries.append((k + j, k, prof.entry(k)))
    entries.sort(key=lambda e: (e[0], e[1]))
    return entries


# -- subcommands ----------------------------------------------------------------

def cmd_omega(args) -> int:
    cfg = RunConfig("omega", dim=args.dim, fmt=args.format)
    cfg.validate()
    operands = _load_operands(args.operands, args.dim)
    a = eval_operator(parse_expression(args.a), args.dim, operands)
    b = eval_operator(parse_expression(args.b), args.dim, operands)
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        raise OperatorParseError("omega needs two operator expressions")
    om = curvature(a, b)
    support = om.finite_rank_support()
    entries = _sorted_entries(om)
    if support is None or support.source is None:
        rank = 0
        radius = 0
    else:
        radius = max(abs(support.source[0]), abs(support.source[1]),
                     abs(support.target[0]), abs(support.target[1]))
        rank = exact_rank(om.dense_window(radius))

    doc = {
        "command": "omega", "config": cfg.echo(),
        "result": {
            "support": None if support is None or support.source is None else {
                "source": list(support.source),
                "target": list(support.target),
                "rank_bound": support.rank_bound,
            },
            "rank": rank,
            "entries": [{"row": r, "col": c, "value": matrix_to_json(m)}
                        for r, c, m in entries],
        },
    }
    lines = [f"omega(a, b)  dim={args.dim}"]
    if support is None or support.source is None:
        lines.append("zero operator (empty support, rank 0)")
    else:
        lines.append(f"source modes [{support.source[0]}, {support.source[1]}], "
                     f"target modes [{support.target[0]}, {support.target[1]}], "
                     f"rank bound {support.rank_bound}")
        lines.append(f"rank: {rank}")
        lines.append("entries:")
        for r, c, m in entries:
            if om.dim == 1:
                lines.append(f"  ({r},{c}) = {m.rows[0][0]}")
            else:
                body = "; ".join(", ".join(str(e) for e in row) for row in m.rows)
                lines.append(f"  ({r},{c}) = [{body}]")
    _emit(doc, lines, args.format)
    return 0


def cmd_cocycle(args) -> int:
    cfg = RunConfig("cocycle", dim=args.dim, k=args.k, depth=args.depth,
                    fmt=args.format)
    cfg.validate()
    if len(args.operands_expr) != 2 * args.k:
        print(f"error: cocycle --k {args.k} needs {2 * args.k} operands, "
              f"got {len(args.operands_expr)}", file=sys.stderr)
        return 2
    if args.level == "symbol":
        if args.k != 1:
            raise ValueError("--level symbol supports k=1 only "
                             "(the residue-pairing cocycle is bilinear)")
        syms = []
        for text in args.operands_expr:
            v = eval_symbol(parse_expression(text), args.dim, args.depth)
            if isinstance(v, GaussianRational):
                raise OperatorParseError(f"operand {text!r} is a scalar")
            syms.append(v)
        value = radul_cocycle(*syms)
        doc = {"command": "cocycle", "config": cfg.echo(), "level": "symbol",
               "result": {"value": scalar_to_json(value)}}
        _emit(doc, [f"cocycle k=1 (symbol level) dim={args.dim}",
                    f"value: {value}"], args.format)
        return 0
    operands = _load_operands(args.operands, args.dim)
    ops = []
    for text in args.operands_expr:
        v = eval_operator(parse_expression(text), args.dim, operands)
        if isinstance(v, GaussianRational):
            raise OperatorParseError(f"operand {text!r} is a scalar")
        ops.append(v)
    value = chern_cocycle(args.k, *ops)
    doc = {"command": "cocycle", "config": cfg.echo(), "level": "operator",
           "result": {"value": scalar_to_json(value)}}
    lines = [f"cocycle k={args.k} dim={args.dim}", f"value: {value}"]
    if args.verbose:
        rows = chern_permutation_table(args.k, *ops)
        doc["result"]["permutations"] = [
            {"permutation": list(s), "sign": sign, "trace": scalar_to_json(t)}
            for s, sign, t in rows
        ]
        lines.append("permutation table:")
        for s, sign, t in rows:
            lines.append(f"  s={s} sign={sign:+d} trace={t}")
    _emit(doc, lines, args.format)
    return 0


def cmd_residue(args) -> int:
    cfg = RunConfig("residue", dim=args.dim, depth=args.depth, fmt=args.format)
    cfg.validate()
    operands = {}
    if args.operands:
        with open(args.operands, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        operands = {name: symbol_from_document(doc, args.depth)
                    for name, doc in raw.items()}
    sym = eval_symbol(parse_expression(args.expr), args.dim, args.depth, operands)
    if isinstance(sym, GaussianRational):
        raise OperatorParseError("residue needs a symbol expression")
    value = wodzicki_residue(sym)
    doc = {"command": "residue", "config": cfg.echo(),
           "result": {"value": scalar_to_json(value)}}
    _emit(doc, [f"residue depth={args.depth} dim={args.dim}",
                f"value: {value}"], args.format)
    return 0


def cmd_verify(args) -> int:
    cfg = RunConfig("verify", dim=args.dim, seed=args.seed, samples=args.samples,
                    degree=args.degree, depth=args.depth, k=args.k,
                    fmt=args.format)
    cfg.validate()
    if args.kind == "closedness":
        report = repro.closedness_sweep(args.k, args.samples, args.seed,
                                        args.degree, args.dim)
        failures = report.failures
        checked = len(report.rows)
        extra = {
            "hochschild_diagnostic": [scalar_to_json(r.hochschild_value)
                                      for r in report.rows],
        }
    elif args.kind == "bianchi":
        rep = repro.bianchi_sweep(args.samples, args.seed, args.degree, args.dim)
        failures, checked, extra = rep.failures, rep.checked, {}
    elif args.kind == "residue-trace":
        rep = repro.residue_trace_sweep(args.samples, args.seed, args.dim,
                                        args.depth)
        failures, checked, extra = rep.failures, rep.checked, {}
    else:  # oracle
        rep = repro.oracle_sweep(args.samples, args.seed, args.degree, args.dim)
        failures, checked, extra = rep.failures, rep.checked, {}

    ok = not failures
    doc = {"command": "verify", "kind": args.kind, "config": cfg.echo(),
           "checked": checked, "failures": failures, "ok": ok}
    doc.update(extra)
    lines = [f"verify {args.kind}: checked {checked} samples, "
             f"{'PASS' if ok else 'FAIL'}"]
    for f in failures:
        lines.append(f"  counterexample: {f}")
    _emit(doc, lines, args.format)
    return 0 if ok else 1


def _four_cocycle_assertions(table, dim: int):
    ident = next(r for r in table.rows if r.permutation == (0, 1, 2, 3))
    two_d = GaussianRational(2 * dim)
    checks = [
        ("identity pairing trace equals 2d",
         ident.contribution == two_d,
         f"got {ident.contribution}, want {two_d}"),
        ("sign counts lie in {0,2}^2",
         all(r.n1 in (0, 2) and r.n_minus1 in (0, 2) for r in table.rows), ""),
        ("even permutations have n_minus1 = 0",
         all(r.n_minus1 == 0 for r in table.rows if r.sign == 1),
         "fails for mixed-pair permutations"),
        ("odd permutations have n1 = 0",
         all(r.n1 == 0 for r in table.rows if r.sign == -1),
         "fails for mixed-pair permutations"),
        ("alternated total is positive",
         bool(table.total) and table.total.im == 0 and table.total.re > 0,
         f"exact total is {table.total}"),
    ]
    return checks


def cmd_repro(args) -> int:
    cfg = RunConfig("repro", dim=args.dim, fmt=args.format)
    cfg.validate()
    if args.target == "case-table":
        rep = repro.case_table_sweep(6)
        doc = {"command": "repro", "target": "case-table", "config": cfg.echo(),
               "checked": rep.checked, "failures": rep.failures, "ok": rep.ok}
        lines = [f"repro case-table: {rep.checked} triples over [-6,6]^3, "
                 f"{'PASS' if rep.ok else 'FAIL'}"]
        _emit(doc, lines, args.format)
        if not rep.ok:
            raise ReproAssertionFailed("case-table mismatches: "
                                       + "; ".join(rep.failures[:5]))
        return 0

    if args.target == "schwinger":
        rep = repro.schwinger_comparison(range(1, 6), args.dim)
        rows_doc = [{"m": r.m, "chern": scalar_to_json(r.chern),
                     "schwinger": scalar_to_json(r.schwinger),
                     "radul": scalar_to_json(r.radul)} for r in rep.rows]
        doc = {"command": "repro", "target": "schwinger", "config": cfg.echo(),
               "rows": rows_doc,
               "chern_over_schwinger": scalar_to_json(rep.chern_over_schwinger),
               "radul_over_chern": scalar_to_json(rep.radul_over_chern),
               "ok": rep.constants_m_independent}
        lines = ["repro schwinger comparison (m = 1..5):",
                 "  m | chern | schwinger | radul"]
        for r in rep.rows:
            lines.append(f"  {r.m} | {r.chern} | {r.schwinger} | {r.radul}")
        lines.append(f"measured chern/schwinger = {rep.chern_over_schwinger}, "
                     f"radul/chern = {rep.radul_over_chern}")
        lines.append("constants m-independent: "
                     + ("PASS" if rep.constants_m_independent else "FAIL"))
        _emit(doc, lines, args.format)
        if not rep.constants_m_independent:
            raise ReproAssertionFailed("comparison constants depend on m")
        return 0

    # four-cocycle
    table = repro.four_cocycle_table(-2, 2, -3, 3, args.dim)
    checks = _four_cocycle_assertions(table, args.dim)
    internal = table.total == chern_cocycle(
        2, *(op_z_power(m, args.dim) for m in (-2, 2, -3, 3)))
    rows_doc = [{"permutation": list(r.permutation),
                 "exponents": list(r.exponents), "sign": r.sign,
                 "n1": r.n1, "n_minus1": r.n_minus1,
                 "contribution": scalar_to_json(r.contribution)}
                for r in table.rows]
    doc = {"command": "repro", "target": "four-cocycle", "config": cfg.echo(),
           "exponents": [-2, 2, -3, 3], "rows": rows_doc,
           "total": scalar_to_json(table.total),
           "total_matches_operator_route": internal,
           "assertions": [{"name": name, "ok": ok, "detail": detail}
                          for name, ok, detail in checks]}
    lines = [f"repro four-cocycle at (z^-2, z^2, z^-3, z^3), dim={args.dim}",
             "  permutation | exponents | sign | n1 | n-1 | contribution"]
    for r in table.rows:
        lines.append(f"  {r.permutation} | {str(r.exponents):>16} | {r.sign:+d} "
                     f"| {r.n1} | {r.n_minus1} | {r.contribution}")
    lines.append(f"alternated total: {table.total}")
    lines.append(f"total matches operator route: {internal}")
    for name, ok, detail in checks:
        suffix = "" if ok or not detail else f" ({detail})"
        lines.append(f"assert {name}: {'PASS' if ok else 'FAIL'}{suffix}")
    _emit(doc, lines, args.format)
    failed = [name for name, ok, _ in checks if not ok]
    if not internal:
        failed.append("total matches operator route")
    if failed:
        raise ReproAssertionFailed("failed assertions: " + "; ".join(failed))
    return 0


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdocycles",
        description="Exact curvature cocycles on the Fourier lattice of the circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=False):
        p.add_argument("--dim", type=int, default=1, help="fiber dimension d")
        p.add_argument("--format", choices=("table", "structured"),
                       default="table")
        if seeded:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--samples", type=int, default=50)
            p.add_argument("--degree", type=int, default=3,
                           help="degree bound for random elements")

    p_omega = sub.add_parser("omega", help="curvature of two operator expressions")
    p_omega.add_argument("a")
    p_omega.add_argument("b")
    p_omega.add_argument("--operands", help="JSON file of named operator literals")
    common(p_omega)
    p_omega.set_defaults(func=cmd_omega)

    p_coc = sub.add_parser("cocycle", help="alternating trace cocycle of 2k operators")
    p_coc.add_argument("--k", type=int, default=1)
    p_coc.add_argument("operands_expr", nargs="+", metavar="operand")
    p_coc.add_argument("--operands", help="JSON file of named operator literals")
    p_coc.add_argument("--verbose", action="store_true",
                       help="include the permutation table")
    p_coc.add_argument("--level", choices=("operator", "symbol"),
                       default="operator",
                       help="operator-level trace cocycle or the symbol-level "
                            "residue pairing (k=1)")
    p_coc.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common(p_coc)
    p_coc.set_defaults(func=cmd_cocycle)

    p_res = sub.add_parser("residue", help="Wodzicki residue of a symbol expression")
    p_res.add_argument("expr")
    p_res.add_argument("--operands", help="JSON file of named symbol literals")
    p_res.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common(p_res)
    p_res.set_defaults(func=cmd_residue)

    p_ver = sub.add_parser("verify", help="randomized identity sweeps")
    p_ver.add_argument("kind", choices=("closedness", "bianchi",
                                        "residue-trace", "oracle"))
    p_ver.add_argument("--k", type=int, default=1)
    p_ver.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common(p_ver, seeded=True)
    p_ver.set_defaults(func=cmd_verify)

    p_rep = sub.add_parser("repro", help="fixed replication targets")
    p_rep.add_argument("target", choices=("four-cocycle", "schwinger",
                                          "case-table"))
    common(p_rep)
    p_rep.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except OperatorParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except ReproAssertionFailed as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 1
    except (PdoCyclesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
