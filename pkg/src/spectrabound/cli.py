"""Command-line front end.

Exit codes: 0 success, 2 input/validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import report as rp
from .bounds import TOL_ATTAIN, TOL_CHAIN, ShiftedSystem, diagnose_equality, theorem_bounds
from .errors import NumericalError, ValidationError
from .graphs import FAMILIES, MatrixKind, format_graph, generate, read_graph, write_graph
from .matcore import DEFAULT_TOL, read_matrix, read_vector, spectral_radius
from .spectra import CATALOG_EXEMPT, baseline_catalog, bounds_for, compare_report, search_problem34

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

KIND_CHOICES = [k.value for k in MatrixKind]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_tols(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-oracle", type=float, default=DEFAULT_TOL, help="power-iteration relative residual")
    p.add_argument("--tol-equality", type=float, default=TOL_ATTAIN, help="bound-attainment relative tolerance")
    p.add_argument("--tol-chain", type=float, default=TOL_CHAIN, help="chain-equation relative tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="power-iteration budget (default 200n+10000)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectrabound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="pair bounds, oracle and equality diagnosis")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", type=Path, help="edge-list file")
    src.add_argument("--matrix", type=Path, help="matrix file for A (zero diagonal)")
    p.add_argument("--kind", choices=KIND_CHOICES, default="adjacency")
    shift = p.add_mutually_exclusive_group()
    shift.add_argument("--shift", type=Path, help="vector file for t (default zeros)")
    shift.add_argument("--corollary", action="store_true", help="use t = row sums of A")
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_tols(p)

    p = sub.add_parser("report", help="all four spectra of one graph with the baseline catalog")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    _add_tols(p)

    p = sub.add_parser("compare", help="theorem bounds against the baseline catalog")
    p.add_argument("inputs", nargs="*", type=Path, help="edge-list files or directories")
    p.add_argument("--kind", choices=KIND_CHOICES, action="append", help="repeatable; default all")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("-o", "--output", type=Path)
    _add_tols(p)

    p = sub.add_parser("search-p34", help="search for non-semi-regular bipartite chain graphs")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--tol", type=float, default=TOL_CHAIN)
    p.add_argument("--out-dir", type=Path, help="write witnesses as edge-list files here")
    p.add_argument("--workers", type=int, default=None, help="process count (default SPECTRABOUND_THREADS)")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("gen", help="write a named graph family as an edge list")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", type=Path)
    return parser


def _threads() -> int:
    raw = os.environ.get("SPECTRABOUND_THREADS", "0")
    try:
        return max(0, int(raw))
    except ValueError:
        raise ValidationError(f"SPECTRABOUND_THREADS must be an integer, got {raw!r}") from None


def _emit(text: str, output: Path | None = None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


# --- bounds -------------------------------------------------------------------


def _diag_text(d: dict) -> list[str]:
    lines = [f"equality    : {d['side']}", f"condition i : {'holds' if d['condition_i'] else 'fails'}"]
    c2 = d["condition_ii"]
    if c2 is None:
        lines.append("condition ii: fails")
    else:
        lines.append(
            f"condition ii: holds with U={c2['U']} W={c2['W']} l={rp.fmt(c2['l'])} m={rp.fmt(c2['m'])}"
            f" (lower reading l={rp.fmt(c2['l_lower_reading'])}, upper reading l={rp.fmt(c2['l_upper_reading'])})"
        )
    return lines


def _bounds_text(d: dict) -> str:
    b, o = d["bounds"], d["oracle"]
    src = d["source"]
    head = ", ".join(f"{k}={v}" for k, v in src.items() if v is not None)
    lines = [
        f"source      : {head}",
        f"lower       : {rp.fmt(b['lower'])}  at pair {tuple(b['argmin'])}",
        f"upper       : {rp.fmt(b['upper'])}  at pair {tuple(b['argmax'])}",
        f"rho         : {rp.fmt(o['rho'])}  (residual {rp.fmt(o['residual'])}, {o['iterations']} iterations)",
    ]
    lines += _diag_text(d["diagnosis"])
    if "classification" in d:
        labels = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in d["classification"].items())
        lines.append(f"graph labels: {labels}")
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> int:
    if args.graph is not None:
        if args.shift is not None or args.corollary:
            raise ValidationError("--shift/--corollary apply to --matrix only")
        g = read_graph(args.graph)
        rep = bounds_for(g, args.kind, args.tol_oracle, args.tol_equality, args.tol_chain, args.max_iter)
        d = rp.spectrum_dict(rep, graph_id=args.graph.stem)
    else:
        A = read_matrix(args.matrix)
        if args.corollary:
            sys_ = ShiftedSystem.corollary(A)
            shift_src = "row-sums"
        elif args.shift is not None:
            sys_ = ShiftedSystem(A, read_vector(args.shift))
            shift_src = str(args.shift)
        else:
            sys_ = ShiftedSystem(A, np.zeros(A.shape[0]))
            shift_src = "zero"
        b = theorem_bounds(sys_)
        res = spectral_radius(sys_.B, args.tol_oracle, args.max_iter)
        diag = diagnose_equality(sys_, res.rho, args.tol_equality, args.tol_chain, bounds=b)
        d = rp.matrix_bounds_dict({"matrix": str(args.matrix), "shift": shift_src}, b, res, diag)
    _emit(rp.dumps(d) if args.format == "json" else _bounds_text(d))
    return EXIT_OK


# --- report -------------------------------------------------------------------


def cmd_report(args) -> int:
    g = read_graph(args.graph)
    spectra = []
    for kind in MatrixKind:
        rep = bounds_for(g, kind, args.tol_oracle, args.tol_equality, args.tol_chain, args.max_iter)
        d = rp.spectrum_dict(rep, graph_id=args.graph.stem)
        d.pop("report_type")
        d["bounds"].pop("pairs")
        d["baseline"] = [
            {"id": bv.id, "lower": rp.num(bv.lower), "upper": rp.num(bv.upper), "note": bv.note}
            for bv in baseline_catalog(g, kind)
        ]
        spectra.append(d)
    out = {
        "report_type": "report",
        "graph": args.graph.stem,
        "n": g.n,
        "directed": g.directed,
        "spectra": spectra,
    }
    if args.format == "json":
        _emit(rp.dumps(out))
        return EXIT_OK
    chunks = [f"graph {out['graph']} (n={g.n}, {'directed' if g.directed else 'undirected'})\n"]
    for d in spectra:
        chunks.append(f"\n[{d['source']['kind']}]\n")
        chunks.append(_bounds_text(d))
        for bv in d["baseline"]:
            note = f"   [{bv['note']}]" if bv["note"] else ""
            chunks.append(f"  ({bv['id']}) lower={rp.fmt(bv['lower']) or '-'} upper={rp.fmt(bv['upper'])}{note}\n")
    _emit("".join(chunks))
    return EXIT_OK


# --- compare ------------------------------------------------------------------


def _expand_inputs(paths: list[Path]) -> list[Path]:
    files: list[Path] = []
    for p in paths:
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.is_file()))
        elif p.exists():
            files.append(p)
        else:
            raise ValidationError(f"{p}: no such file or directory")
    return files


def _compare_one(path: Path, kinds: list[str], tol: float, max_iter: int | None) -> list[dict]:
    g = read_graph(path)
    rows = []
    for k in kinds:
        rep, cr = compare_report(g, k, tol, max_iter)
        rows.extend(rp.compare_rows_dicts(path.stem, rep.kind.label, cr))
    return rows


def cmd_compare(args) -> int:
    files = _expand_inputs(args.inputs)
    if not files:
        raise ValidationError("empty corpus: no input files")
    kinds = args.kind or KIND_CHOICES
    workers = _threads()
    if workers > 0 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda f: _compare_one(f, kinds, args.tol_oracle, args.max_iter), files))
    else:
        chunks = [_compare_one(f, kinds, args.tol_oracle, args.max_iter) for f in files]
    rows = [r for chunk in chunks for r in chunk]

    if args.format == "csv":
        text = rp.compare_csv(rows)
    elif args.format == "json":
        text = rp.dumps({"report_type": "compare", "rows": rows})
    else:
        lines = [f"{'graph':<14}{'kind':<30}{'bound':<9}{'lower':>14}{'upper':>14}{'rho':>14}"]
        notes = {}
        for r in rows:
            mark = "*" if r["note"] else ""
            if r["note"]:
                notes[r["bound_id"]] = r["note"]
            lines.append(
                f"{r['graph_id']:<14}{r['kind']:<30}{r['bound_id'] + mark:<9}"
                f"{rp.fmt(r['lower']) or '-':>14}{rp.fmt(r['upper']) or '-':>14}{rp.fmt(r['rho']):>14}"
            )
        for bid, note in notes.items():
            exempt = " (exempt from containment checks)" if bid in CATALOG_EXEMPT else ""
            lines.append(f"* ({bid}) {note}{exempt}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# --- search-p34 ---------------------------------------------------------------


def cmd_search_p34(args) -> int:
    workers = args.workers if args.workers is not None else _threads()
    summary = search_problem34(args.max_n, args.tol, workers=workers)
    written = []
    if args.out_dir is not None and summary.witnesses:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        for k, w in enumerate(summary.witnesses, start=1):
            path = args.out_dir / f"witness_{k:04d}_n{w.graph.n}.g"
            write_graph(w.graph, path, comment=f"chain l={rp.fmt(w.l)} m={rp.fmt(w.m)} U={list(w.U)}")
            written.append(str(path))
    d = rp.search_dict(summary, written)
    if args.format == "json":
        _emit(rp.dumps(d))
    else:
        lines = [
            f"examined={d['examined']} witnesses={d['witness_count']}",
            f"unique={d['unique']} chain_holds={d['chain_holds']} max_n={d['max_n']} "
            f"wall_time={rp.fmt(d['wall_time'])}s backend={d['backend']}",
        ]
        for n, row in d["per_n"].items():
            lines.append(f"  n={n}: " + " ".join(f"{k}={v}" for k, v in row.items()))
        lines.extend(f"  witness: {p}" for p in written)
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


# --- gen ----------------------------------------------------------------------


def _coerce(tok: str):
    try:
        return int(tok)
    except ValueError:
        try:
            return float(tok)
        except ValueError:
            raise ValidationError(f"parameter {tok!r} is not a number") from None


def cmd_gen(args) -> int:
    g = generate(args.family, *[_coerce(t) for t in args.params], seed=args.seed)
    _emit(format_graph(g), args.output)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "report": cmd_report,
    "compare": cmd_compare,
    "search-p34": cmd_search_p34,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
