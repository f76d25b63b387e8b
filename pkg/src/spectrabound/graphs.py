"""Simple graphs and digraphs, their degree/distance statistics, and the
four matrix families built from them.

Vertices are 1-based everywhere a user can see them (files, edges,
partitions); matrices are ordinary 0-based numpy arrays.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _backend
from .bounds import ShiftedSystem
from .errors import (
    BadParams,
    DuplicateEdge,
    IndexOutOfRange,
    NotConnected,
    NotStronglyConnected,
    ParseError,
    SelfLoop,
    ValidationError,
    ZeroDegree,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges stored as ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]

    directed = False

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u - 1, v - 1] = A[v - 1, u - 1] = 1
        return A

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Digraph:
    """Simple digraph; arcs are ordered pairs ``(u, v)`` meaning u -> v."""

    n: int
    arcs: frozenset[tuple[int, int]]

    directed = True

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("digraph needs at least one vertex")
        for u, v in self.arcs:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise IndexOutOfRange(f"arc ({u}, {v}) outside 1..{self.n}")

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Digraph":
        return cls(n, frozenset((int(u), int(v)) for u, v in arcs))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self.arcs

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.arcs:
            A[u - 1, v - 1] = 1
        return A

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


AnyGraph = Graph | Digraph


# --- edge-list format -------------------------------------------------------


def parse_graph(text: str, source: str | None = None) -> AnyGraph:
    """Parse the ``directed:`` / ``n:`` header plus one ``u v`` pair per line."""
    headers: dict[str, tuple[str, int, int]] = {}
    pairs: list[tuple[int, int, int]] = []
    where = f"{source}:" if source else ""

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if ":" in stripped:
            if pairs:
                raise ParseError("header after edge lines", lineno, indent + 1, source)
            key, _, value = stripped.partition(":")
            key = key.strip()
            if key not in ("directed", "n"):
                raise ParseError(f"unknown header {key!r}", lineno, indent + 1, source)
            if key in headers:
                raise ParseError(f"repeated header {key!r}", lineno, indent + 1, source)
            vcol = raw.index(":") + 2 + (len(value) - len(value.lstrip()))
            headers[key] = (value.strip(), lineno, vcol)
            continue
        toks = stripped.split()
        if len(toks) != 2:
            col = indent + 1 if len(toks) < 2 else raw.index(toks[2], raw.index(toks[1]) + len(toks[1])) + 1
            raise ParseError("expected exactly two vertex indices", lineno, col, source)
        nums = []
        pos = 0
        for tok in toks:
            pos = raw.index(tok, pos)
            try:
                nums.append(int(tok))
            except ValueError:
                raise ParseError(f"expected an integer vertex index, got {tok!r}", lineno, pos + 1, source) from None
            pos += len(tok)
        pairs.append((nums[0], nums[1], lineno))

    for key in ("directed", "n"):
        if key not in headers:
            raise ParseError(f"missing header {key!r}", 1, 1, source)
    dval, dline, dcol = headers["directed"]
    if dval.lower() not in ("true", "false"):
        raise ParseError(f"directed must be true or false, got {dval!r}", dline, dcol, source)
    directed = dval.lower() == "true"
    nval, nline, ncol = headers["n"]
    try:
        n = int(nval)
    except ValueError:
        raise ParseError(f"n must be an integer, got {nval!r}", nline, ncol, source) from None
    if n < 1:
        raise ParseError("n must be positive", nline, ncol, source)

    seen: set[tuple[int, int]] = set()
    for u, v, lineno in pairs:
        if u == v:
            raise SelfLoop(f"{where}{lineno}: self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise IndexOutOfRange(f"{where}{lineno}: edge ({u}, {v}) outside 1..{n}")
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"{where}{lineno}: duplicate edge ({u}, {v})")
        seen.add(key)
    if directed:
        return Digraph(n, frozenset(seen))
    return Graph(n, frozenset(seen))


def format_graph(g: AnyGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"directed: {'true' if g.directed else 'false'}")
    lines.append(f"n: {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> AnyGraph:
    path = Path(path)
    return parse_graph(path.read_text(), source=str(path))


def write_graph(g: AnyGraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))


# --- statistics -------------------------------------------------------------


@dataclass(frozen=True)
class DegreeStats:
    """Degrees (out-degrees) ``d``, neighbour degree sums ``S`` and ``m = S / d``."""

    d: np.ndarray
    S: np.ndarray
    m: np.ndarray

    def m_exact(self) -> list[Fraction]:
        return [Fraction(int(s), int(d)) for s, d in zip(self.S, self.d)]


@dataclass(frozen=True)
class DistanceStats:
    dist: np.ndarray
    D: np.ndarray
    T: np.ndarray


def degree_stats(g: AnyGraph) -> DegreeStats:
    A = g.adjacency()
    d = A.sum(axis=1)
    if np.any(d == 0):
        k = int(np.flatnonzero(d == 0)[0]) + 1
        raise ZeroDegree(f"vertex {k} has {'out-' if g.directed else ''}degree 0")
    S = A @ d
    return DegreeStats(d=d, S=S, m=S / d)


def _components(reach: np.ndarray) -> int:
    """Count classes of the mutual-reachability relation."""
    mutual = reach & reach.T
    n = reach.shape[0]
    label = np.full(n, -1)
    count = 0
    for v in range(n):
        if label[v] < 0:
            label[mutual[v]] = count
            count += 1
    return count


def all_pairs_distances(g: AnyGraph) -> np.ndarray:
    """BFS hop distances; ``-1`` marks unreachable pairs."""
    return _backend.bfs_distances(g.adjacency())


def require_connected(g: AnyGraph, dist: np.ndarray | None = None) -> np.ndarray:
    if dist is None:
        dist = all_pairs_distances(g)
    if np.any(dist < 0):
        k = _components(dist >= 0)
        if g.directed:
            raise NotStronglyConnected(f"digraph is not strongly connected ({k} strong components)", k)
        raise NotConnected(f"graph is not connected ({k} components)", k)
    return dist


def distance_stats(g: AnyGraph) -> DistanceStats:
    dist = require_connected(g)
    D = dist.sum(axis=1)
    T = dist @ D
    return DistanceStats(dist=dist, D=D, T=T)


# --- matrix families --------------------------------------------------------


class MatrixKind(enum.Enum):
    ADJACENCY = "adjacency"
    SIGNLESS_LAPLACIAN = "signless-laplacian"
    DISTANCE = "distance"
    DISTANCE_SIGNLESS_LAPLACIAN = "distance-signless-laplacian"

    @property
    def uses_distance(self) -> bool:
        return self in (MatrixKind.DISTANCE, MatrixKind.DISTANCE_SIGNLESS_LAPLACIAN)


def build_system(g: AnyGraph, kind: MatrixKind | str) -> ShiftedSystem:
    """``(A, t)`` with ``A + diag(t)`` equal to the requested matrix of ``g``."""
    kind = MatrixKind(kind)
    if kind.uses_distance:
        ds = distance_stats(g)
        A = ds.dist
        t = ds.D if kind is MatrixKind.DISTANCE_SIGNLESS_LAPLACIAN else np.zeros(g.n)
    else:
        require_connected(g)
        A = g.adjacency()
        t = A.sum(axis=1) if kind is MatrixKind.SIGNLESS_LAPLACIAN else np.zeros(g.n)
    return ShiftedSystem(A.astype(np.float64), np.asarray(t, dtype=np.float64))


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    regular: bool
    bipartite: tuple[tuple[int, ...], tuple[int, ...]] | None
    semiregular_bipartite: bool
    same_partition_average_degree: bool


def bipartition(g: AnyGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """1-based two-colouring of the underlying undirected graph, part of vertex 1 first."""
    A = g.adjacency()
    A = A | A.T
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(A[u]):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(int(v))
                elif color[v] == color[u]:
                    return None
    U = tuple(k + 1 for k in range(g.n) if color[k] == 0)
    W = tuple(k + 1 for k in range(g.n) if color[k] == 1)
    return U, W


def _constant_on(values, part) -> bool:
    return len({values[k - 1] for k in part}) <= 1


def classify(g: Graph) -> Classification:
    stats = degree_stats(g)
    d = [int(x) for x in stats.d]
    m = stats.m_exact()
    regular = len(set(d)) == 1
    parts = bipartition(g)
    semi = same_m = False
    if parts is not None and parts[1]:
        U, W = parts
        semi = _constant_on(d, U) and _constant_on(d, W)
        same_m = _constant_on(m, U) and _constant_on(m, W)
    return Classification(regular, parts, semi, same_m)


# --- generators -------------------------------------------------------------

FAMILIES = (
    "path",
    "cycle",
    "star",
    "complete",
    "complete_bipartite",
    "petersen",
    "directed_cycle",
    "gnp",
    "random_digraph",
)

_MAX_ATTEMPTS = 1000


def _need(cond: bool, msg: str):
    if not cond:
        raise BadParams(msg)


def generate(family: str, *params, seed: int | None = None) -> AnyGraph:
    """Deterministic member of a named family.

    ``gnp`` and ``random_digraph`` take ``(n, p)`` and resample from
    ``random.Random(seed)`` until the result is (strongly) connected.
    """
    family = family.replace("-", "_").lower()
    try:
        if family == "path":
            (n,) = params
            _need(n >= 2, "path needs n >= 2")
            return Graph.from_edges(n, [(k, k + 1) for k in range(1, n)])
        if family == "cycle":
            (n,) = params
            _need(n >= 3, "cycle needs n >= 3")
            return Graph.from_edges(n, [(k, k % n + 1) for k in range(1, n + 1)])
        if family == "star":
            (k,) = params
            _need(k >= 1, "star needs k >= 1 leaves")
            return generate("complete_bipartite", 1, k)
        if family == "complete":
            (n,) = params
            _need(n >= 2, "complete graph needs n >= 2")
            return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])
        if family == "complete_bipartite":
            a, b = params
            _need(a >= 1 and b >= 1, "complete bipartite needs a, b >= 1")
            return Graph.from_edges(a + b, [(u, a + w) for u in range(1, a + 1) for w in range(1, b + 1)])
        if family == "petersen":
            _need(not params, "petersen takes no parameters")
            outer = [(k, k % 5 + 1) for k in range(1, 6)]
            spokes = [(k, k + 5) for k in range(1, 6)]
            inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]
            return Graph.from_edges(10, outer + spokes + inner)
        if family == "directed_cycle":
            (n,) = params
            _need(n >= 2, "directed cycle needs n >= 2")
            return Digraph.from_arcs(n, [(k, k % n + 1) for k in range(1, n + 1)])
        if family in ("gnp", "random_digraph"):
            n, p = params
            n, p = int(n), float(p)
            _need(n >= 2 and 0 < p <= 1, "random families need n >= 2 and 0 < p <= 1")
            return _random_connected(n, p, seed, directed=family == "random_digraph")
    except (TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for {family}: {params!r} ({exc})") from None
    raise BadParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _random_connected(n: int, p: float, seed: int | None, directed: bool) -> AnyGraph:
    rng = random.Random(seed)
    if directed:
        slots = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    else:
        slots = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    for _ in range(_MAX_ATTEMPTS):
        chosen = [e for e in slots if rng.random() < p]
        g = Digraph.from_arcs(n, chosen) if directed else Graph.from_edges(n, chosen)
        if not np.any(all_pairs_distances(g) < 0):
            return g
    raise BadParams(f"no connected sample after {_MAX_ATTEMPTS} attempts; raise p")
