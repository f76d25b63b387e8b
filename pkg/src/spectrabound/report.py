"""Plain-dict views of results for JSON/CSV/text output.

Every float is rounded to 9 significant digits before it leaves this
module, so ``json.loads(json.dumps(d)) == d`` holds for every report.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

from .bounds import BoundResult, ConditionII, EqualityDiagnosis
from .matcore import SpectralResult
from .spectra import CATALOG_EXEMPT, CompareRow, SearchSummary, SpectrumReport

SIG = 9


def num(x: float | None) -> float | None:
    if x is None:
        return None
    return float(f"{float(x):.{SIG}g}")


def fmt(x: float | None) -> str:
    return "" if x is None else f"{float(x):.{SIG}g}"


def _pair(p) -> list[int]:
    return [p[0] + 1, p[1] + 1]


def bounds_dict(b: BoundResult, with_pairs: bool = True) -> dict:
    d = {
        "lower": num(b.lower),
        "upper": num(b.upper),
        "argmin": _pair(b.argmin),
        "argmax": _pair(b.argmax),
    }
    if with_pairs:
        d["pairs"] = [{"i": i + 1, "j": j + 1, "f": num(f)} for i, j, f in b.pair_values]
    return d


def oracle_dict(res: SpectralResult) -> dict:
    return {"rho": num(res.rho), "residual": num(res.residual), "iterations": res.iterations}


def condition_ii_dict(rec: ConditionII | None, one_based: bool = True) -> dict | None:
    if rec is None:
        return None
    off = 1 if one_based else 0
    return {
        "U": [k + off for k in rec.U],
        "W": [k + off for k in rec.W],
        "l": num(rec.l),
        "m": num(rec.m),
        "l_lower_reading": num(max(rec.l, 1.0 / rec.l)),
        "l_upper_reading": num(min(rec.l, 1.0 / rec.l)),
    }


def diagnosis_dict(diag: EqualityDiagnosis) -> dict:
    return {
        "side": diag.side.value,
        "condition_i": diag.condition_i,
        "condition_ii": condition_ii_dict(diag.condition_ii),
    }


def matrix_bounds_dict(source: dict, b: BoundResult, res: SpectralResult, diag: EqualityDiagnosis) -> dict:
    return {
        "report_type": "bounds",
        "source": source,
        "bounds": bounds_dict(b),
        "oracle": oracle_dict(res),
        "diagnosis": diagnosis_dict(diag),
    }


def spectrum_dict(rep: SpectrumReport, graph_id: str | None = None) -> dict:
    return {
        "report_type": "bounds",
        "source": {"graph": graph_id, "kind": rep.kind.kind.value, "directed": rep.kind.directed},
        "bounds": bounds_dict(rep.bounds),
        "oracle": oracle_dict(rep.rho),
        "diagnosis": diagnosis_dict(rep.diagnosis),
        "classification": dict(rep.classification),
        "predicted_equality": rep.predicted_equality,
    }


def compare_rows_dicts(graph_id: str, kind_label: str, rows: list[CompareRow]) -> list[dict]:
    out = []
    for r in rows:
        out.append(
            {
                "graph_id": graph_id,
                "kind": kind_label,
                "bound_id": r.bound_id,
                "lower": num(r.lower),
                "upper": num(r.upper),
                "rho": num(r.rho),
                "lower_gap": num(r.lower_gap),
                "upper_gap": num(r.upper_gap),
                "note": r.note,
                "exempt": r.bound_id in CATALOG_EXEMPT,
            }
        )
    return out


CSV_COLUMNS = ["graph-id", "kind", "bound-id", "lower", "upper", "rho", "lower-gap", "upper-gap"]


def compare_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(
            [
                r["graph_id"],
                r["kind"],
                r["bound_id"],
                fmt(r["lower"]),
                fmt(r["upper"]),
                fmt(r["rho"]),
                fmt(r["lower_gap"]),
                fmt(r["upper_gap"]),
            ]
        )
    return buf.getvalue()


def search_dict(s: SearchSummary, written: list[str] | None = None) -> dict:
    return {
        "report_type": "search-p34",
        "max_n": s.max_n,
        "examined": s.examined,
        "unique": s.unique,
        "chain_holds": s.chain_holds,
        "witness_count": len(s.witnesses),
        "witnesses": [
            {
                "n": w.graph.n,
                "edges": [list(e) for e in w.graph.sorted_edges()],
                "U": list(w.U),
                "W": list(w.W),
                "l": num(w.l),
                "m": num(w.m),
                "exact": w.exact,
            }
            for w in s.witnesses
        ],
        "per_n": {str(n): dict(v) for n, v in sorted(s.per_n.items())},
        "wall_time": num(s.wall_time),
        "backend": s.backend,
        "files": list(written or []),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def schema() -> dict:
    text = resources.files("spectrabound").joinpath("report.schema.json").read_text()
    return json.loads(text)
