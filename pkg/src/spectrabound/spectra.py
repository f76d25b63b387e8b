"""Graph and digraph spectral radii: pair bounds, equality labels, the
literature baseline catalog, and the semi-regularity search."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _backend
from .bounds import (
    TOL_ATTAIN,
    TOL_CHAIN,
    BoundResult,
    ConditionII,
    EqualityDiagnosis,
    check_condition_ii,
    diagnose_equality,
    theorem_bounds,
)
from .errors import BadParams
from .graphs import (
    AnyGraph,
    Graph,
    MatrixKind,
    bipartition,
    build_system,
    classify,
    degree_stats,
    distance_stats,
)
from .matcore import DEFAULT_TOL, SpectralResult, spectral_radius


@dataclass(frozen=True)
class SpectrumKind:
    kind: MatrixKind
    directed: bool

    @classmethod
    def of(cls, kind: MatrixKind | str, g_or_directed) -> "SpectrumKind":
        directed = g_or_directed if isinstance(g_or_directed, bool) else g_or_directed.directed
        return cls(MatrixKind(kind), directed)

    @property
    def label(self) -> str:
        return ("digraph-" if self.directed else "") + self.kind.value

    @property
    def symbol(self) -> str:
        base = {
            MatrixKind.ADJACENCY: "rho",
            MatrixKind.SIGNLESS_LAPLACIAN: "q",
            MatrixKind.DISTANCE: "rho^D",
            MatrixKind.DISTANCE_SIGNLESS_LAPLACIAN: "q^D",
        }[self.kind]
        return base + ("(digraph)" if self.directed else "(G)")


ALL_KINDS = tuple(MatrixKind)


@dataclass(frozen=True)
class SpectrumReport:
    kind: SpectrumKind
    bounds: BoundResult
    rho: SpectralResult
    diagnosis: EqualityDiagnosis
    classification: dict[str, bool]
    predicted_equality: bool


def _const(values) -> bool:
    return len(set(values)) <= 1


def _classification(g: AnyGraph, kind: MatrixKind) -> tuple[dict[str, bool], bool]:
    """Exact graph-level equality labels and the equality they predict."""
    if kind.uses_distance:
        ds = distance_stats(g)
        ratio = [Fraction(int(T), int(D)) for T, D in zip(ds.T, ds.D)]
        if kind is MatrixKind.DISTANCE:
            flag = _const(ratio)
            return {"T_over_D_constant": flag}, flag
        flag = _const([int(D) + q for D, q in zip(ds.D, ratio)])
        return {"D_plus_T_over_D_constant": flag}, flag

    st = degree_stats(g)
    d = [int(x) for x in st.d]
    m = st.m_exact()
    parts = bipartition(g)
    bip = parts is not None
    same_m = bip and all(_const([m[k - 1] for k in part]) for part in parts)
    labels: dict[str, bool] = {"bipartite": bip}
    if not g.directed:
        labels["regular"] = _const(d)
    if kind is MatrixKind.ADJACENCY:
        labels["m_constant"] = _const(m)
        labels["same_partition_average_degree"] = same_m
        return labels, labels["m_constant"] or same_m
    # signless Laplacian: d + m constant, or the bipartite chain
    labels["d_plus_m_constant"] = _const([di + mi for di, mi in zip(d, m)])
    if not g.directed:
        cls = classify(g)
        labels["semiregular_bipartite"] = cls.semiregular_bipartite
    chain = bip and _exact_chain_holds(parts, d, m)
    labels["bipartite_chain"] = bool(chain)
    return labels, labels["d_plus_m_constant"] or bool(chain)


def _exact_chain_holds(parts, d, m) -> bool:
    """Exact check of ``d_i + l m_i`` constant on one part and ``d_j + m_j / l``
    on the other for some ``l > 0``.

    When ``m`` varies inside a part, ``l`` is rational and every equation
    is checked in exact arithmetic. When both parts have constant ``d`` and
    ``m`` the quadratic always has one positive root, so the chain holds.
    """
    U, W = parts
    dU = [d[k - 1] for k in U]
    mU = [m[k - 1] for k in U]
    dW = [d[k - 1] for k in W]
    mW = [m[k - 1] for k in W]
    l = _exact_linear(dU, mU)
    if l is None:
        inv = _exact_linear(dW, mW)
        if inv is None:
            return _const(dU) and _const(dW)
        if inv <= 0:
            return False
        l = 1 / inv
    if l <= 0:
        return False
    vals = {di + l * mi for di, mi in zip(dU, mU)} | {dj + mj / l for dj, mj in zip(dW, mW)}
    return len(vals) == 1


def _exact_linear(dd, mm) -> Fraction | None:
    """Solve ``d_0 + x m_0 = d_k + x m_k`` for the first ``k`` with ``m_k != m_0``."""
    for k in range(1, len(mm)):
        if mm[k] != mm[0]:
            return Fraction(dd[k] - dd[0]) / (mm[0] - mm[k])
    return None


def bounds_for(
    g: AnyGraph,
    kind: MatrixKind | str,
    tol: float = DEFAULT_TOL,
    tol_equality: float = TOL_ATTAIN,
    tol_chain: float = TOL_CHAIN,
    max_iter: int | None = None,
) -> SpectrumReport:
    """Pair bounds, oracle value and equality diagnosis for one matrix of ``g``."""
    sk = SpectrumKind.of(kind, g)
    sys = build_system(g, sk.kind)
    b = theorem_bounds(sys)
    res = spectral_radius(sys.B, tol, max_iter)
    diag = diagnose_equality(sys, res.rho, tol_equality, tol_chain, bounds=b)
    labels, predicted = _classification(g, sk.kind)
    return SpectrumReport(sk, b, res, diag, labels, predicted)


# --- baseline catalog -------------------------------------------------------


@dataclass(frozen=True)
class BaselineValue:
    id: str
    lower: float | None
    upper: float | None
    note: str = ""


NOTE_1_1 = "as printed, max d_i*m_i; the classical bound is sqrt(max d_i*m_i)"
NOTE_1_8 = "as printed, numerator D_i + D_i (reads as D_i + D_j)"
NOTE_1_20 = "upper maximum evaluated over all pairs i, j"
CATALOG_EXEMPT = {"1.1"}


def _minmax(vals) -> tuple[float, float]:
    vals = np.asarray(vals, dtype=np.float64)
    return float(vals.min()), float(vals.max())


def baseline_catalog(g: AnyGraph, kind: MatrixKind | str) -> list[BaselineValue]:
    """Literature bounds for ``(kind, directed)``, each evaluated as printed."""
    kind = MatrixKind(kind)
    out: list[BaselineValue] = []

    if kind.uses_distance:
        ds = distance_stats(g)
        D = ds.D.astype(np.float64)
        T = ds.T.astype(np.float64)
        ratio = T / D
        if not g.directed and kind is MatrixKind.DISTANCE:
            out.append(BaselineValue("1.5", None, float(np.sqrt(np.outer(ratio, ratio)).max())))
            out.append(BaselineValue("1.6", *_minmax(ratio)))
            out.append(BaselineValue("1.7", *_minmax(np.sqrt(T))))
        elif not g.directed:
            Di, Dj = np.meshgrid(D, D, indexing="ij")
            cij = np.outer(ratio, ratio)
            printed = (Di + Di + np.sqrt((Di - Dj) ** 2 + 4.0 * cij)) / 2.0
            out.append(BaselineValue("1.8", None, float(printed.max()), NOTE_1_8))
            out.append(BaselineValue("1.9", *_minmax(D + ratio)))
            out.append(BaselineValue("1.10", *_minmax(np.sqrt(2 * T + 2 * D**2))))
        elif kind is MatrixKind.DISTANCE:
            out.append(BaselineValue("1.19", *_minmax(D)))
            out.append(BaselineValue("1.20", *_minmax(np.sqrt(np.outer(D, D))), NOTE_1_20))
        return out

    st = degree_stats(g)
    A = g.adjacency()
    d = st.d.astype(np.float64)
    m = st.m
    ii, jj = np.nonzero(A)
    if not g.directed and kind is MatrixKind.ADJACENCY:
        out.append(BaselineValue("1.1", None, float((d * m).max()), NOTE_1_1))
        out.append(BaselineValue("1.2", None, float(np.sqrt(m[ii] * m[jj]).max())))
    elif not g.directed:
        out.append(BaselineValue("1.3", None, float((d + np.sqrt(d * m)).max())))
        out.append(BaselineValue("1.4", None, float(((d + np.sqrt(d**2 + 8 * d * m)) / 2).max())))
    elif kind is MatrixKind.ADJACENCY:
        out.append(BaselineValue("1.11", *_minmax(d)))
        out.append(BaselineValue("1.12", *_minmax(m)))
        out.append(BaselineValue("1.13", *_minmax(np.sqrt(d * m))))
        out.append(BaselineValue("1.14", *_minmax(np.sqrt((A @ (d * m)) / d))))
        out.append(BaselineValue("1.15", *_minmax(np.sqrt(m[ii] * m[jj]))))
    else:
        out.append(BaselineValue("1.16", *_minmax(d + m)))
        gij = (d[ii] + d[jj] + np.sqrt((d[ii] - d[jj]) ** 2 + 4 * m[ii] * m[jj])) / 2
        out.append(BaselineValue("1.17", *_minmax(gij)))
        # j ~ i is the arc v_j -> v_i: in-neighbours of v_i
        out.append(BaselineValue("1.18", None, float((d + np.sqrt(A.T @ d)).max())))
    return out


@dataclass(frozen=True)
class CompareRow:
    bound_id: str
    lower: float | None
    upper: float | None
    rho: float
    note: str = ""

    @property
    def lower_gap(self) -> float | None:
        return None if self.lower is None else self.rho - self.lower

    @property
    def upper_gap(self) -> float | None:
        return None if self.upper is None else self.upper - self.rho


def compare_report(
    g: AnyGraph, kind: MatrixKind | str, tol: float = DEFAULT_TOL, max_iter: int | None = None
) -> tuple[SpectrumReport, list[CompareRow]]:
    """Theorem row first, then every catalog formula in ascending order."""
    rep = bounds_for(g, kind, tol, max_iter=max_iter)
    rho = rep.rho.rho
    rows = [CompareRow("theorem", rep.bounds.lower, rep.bounds.upper, rho)]
    for bv in baseline_catalog(g, kind):
        rows.append(CompareRow(bv.id, bv.lower, bv.upper, rho, bv.note))
    return rep, rows


# --- semi-regularity search -------------------------------------------------


@dataclass(frozen=True)
class Witness:
    graph: Graph
    U: tuple[int, ...]
    W: tuple[int, ...]
    l: float
    m: float
    exact: bool


@dataclass
class SearchSummary:
    max_n: int
    examined: int = 0
    unique: int = 0
    chain_holds: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    per_n: dict[int, dict[str, int]] = field(default_factory=dict)
    wall_time: float = 0.0
    backend: str = _backend.BACKEND


def _graph_from_mask(a: int, b: int, mask: int) -> Graph:
    edges = [(i + 1, a + j + 1) for i in range(a) for j in range(b) if mask >> (i * b + j) & 1]
    return Graph.from_edges(a + b, edges)


def _search_block(args):
    a, b, tol = args
    connected, reps = _backend.enumerate_bipartite(a, b)
    chain = 0
    witnesses = []
    for mask in reps:
        g = _graph_from_mask(a, b, mask)
        sys = build_system(g, MatrixKind.SIGNLESS_LAPLACIAN)
        rec = check_condition_ii(sys, tol)
        if rec is None:
            continue
        chain += 1
        d = [int(x) for x in sys.t]
        semiregular = _const(d[:a]) and _const(d[a:])
        if semiregular:
            continue
        st = degree_stats(g)
        exact = _exact_chain_holds((tuple(range(1, a + 1)), tuple(range(a + 1, a + b + 1))), d, st.m_exact())
        rec1 = _one_based(rec)
        witnesses.append(Witness(g, rec1.U, rec1.W, rec1.l, rec1.m, exact))
    return a, b, connected, len(reps), chain, witnesses


def _one_based(rec: ConditionII) -> ConditionII:
    return ConditionII(tuple(k + 1 for k in rec.U), tuple(k + 1 for k in rec.W), rec.l, rec.m)


def search_problem34(max_n: int, tol: float = TOL_CHAIN, workers: int = 0) -> SearchSummary:
    """Look for connected bipartite non-semi-regular graphs whose signless
    Laplacian satisfies the bipartite chain equations.

    Every connected spanning subgraph of ``K_{a,b}`` with ``2 <= a+b <= max_n``
    is enumerated; graphs sharing per-part ``(degree, neighbour degree sum)``
    multisets are tested once. ``workers > 1`` fans the ``(a, b)`` blocks out
    to processes; the result is identical to the sequential run.
    """
    if not isinstance(max_n, int) or not 4 <= max_n <= 10:
        raise BadParams(f"max_n must be an integer in [4, 10], got {max_n!r}")
    if not tol > 0:
        raise BadParams("tol must be positive")
    start = time.perf_counter()
    blocks = [(a, n - a, tol) for n in range(2, max_n + 1) for a in range(1, n // 2 + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_block, blocks))
    else:
        results = [_search_block(blk) for blk in blocks]
    out = SearchSummary(max_n=max_n)
    for a, b, connected, unique, chain, witnesses in results:
        n = a + b
        row = out.per_n.setdefault(n, {"examined": 0, "unique": 0, "chain_holds": 0, "witnesses": 0})
        row["examined"] += connected
        row["unique"] += unique
        row["chain_holds"] += chain
        row["witnesses"] += len(witnesses)
        out.examined += connected
        out.unique += unique
        out.chain_holds += chain
        out.witnesses.extend(witnesses)
    out.wall_time = time.perf_counter() - start
    return out
