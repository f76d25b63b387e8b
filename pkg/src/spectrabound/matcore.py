"""Dense nonnegative matrices, irreducibility, and the Perron-root oracle."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from . import _backend
from .errors import NoConvergence, NotIrreducible, ParseError, ValidationError

DEFAULT_TOL = 1e-12
ROW_SUM_EQ_TOL = 1e-12


def default_max_iter(n: int) -> int:
    return 200 * n + 10000


def as_nonneg_matrix(A, *, zero_diagonal: bool = False, min_order: int = 1) -> np.ndarray:
    """Validate ``A`` and return it as a read-only float64 array."""
    M = np.array(A, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {M.shape}")
    n = M.shape[0]
    if n < min_order:
        raise ValidationError(f"matrix order must be at least {min_order}, got {n}")
    if not np.all(np.isfinite(M)):
        raise ValidationError("matrix entries must be finite")
    if np.any(M < 0):
        i, j = np.argwhere(M < 0)[0]
        raise ValidationError(f"negative entry at ({i + 1}, {j + 1})")
    if zero_diagonal and np.any(np.diag(M) != 0):
        i = int(np.flatnonzero(np.diag(M))[0])
        raise ValidationError(f"diagonal entry ({i + 1}, {i + 1}) must be 0")
    M.setflags(write=False)
    return M


def row_sums(A) -> np.ndarray:
    return np.asarray(A, dtype=np.float64).sum(axis=1)


def weighted_row_sums(A, r) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (A.shape[0],):
        raise ValidationError(f"weight vector length {r.shape} does not match order {A.shape[0]}")
    return A @ r


def _reach(support: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(support.shape[0], dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(support[u] & ~seen):
            seen[v] = True
            stack.append(int(v))
    return seen


def is_irreducible(A) -> bool:
    """True iff the support digraph (arc i->j iff A[i,j] > 0) is strongly connected.

    Forward and backward reachability from vertex 0 both cover every vertex.
    A 1x1 matrix counts as irreducible.
    """
    support = np.asarray(A) > 0
    n = support.shape[0]
    if n == 1:
        return True
    return bool(_reach(support, 0).all() and _reach(support.T.copy(), 0).all())


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    vector: np.ndarray
    residual: float
    iterations: int


def spectral_radius(B, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> SpectralResult:
    """Perron root of an irreducible nonnegative ``B`` by shifted power iteration.

    Iterates on ``B + I`` (primitive whenever ``B`` is irreducible) from the
    all-ones vector and stops once ``|Bx - rho x|_inf / rho <= tol``.

    Raises:
        NotIrreducible: off-diagonal support is not strongly connected.
        NoConvergence: ``max_iter`` exhausted; carries the best estimate.
    """
    if not tol > 0:
        raise ValidationError("tol must be positive")
    M = as_nonneg_matrix(B)
    n = M.shape[0]
    if n == 1:
        return SpectralResult(float(M[0, 0]), np.ones(1), 0.0, 0)
    if not is_irreducible(M):
        raise NotIrreducible("matrix is not irreducible (support digraph not strongly connected)")
    if max_iter is None:
        max_iter = default_max_iter(n)
    elif max_iter < 1:
        raise ValidationError("max_iter must be at least 1")
    rho, x, residual, it, ok = _backend.power_iterate(M, tol, max_iter)
    if not ok:
        raise NoConvergence(
            f"power iteration did not reach residual {tol:g} in {it} iterations "
            f"(best rho={rho!r}, residual={residual:.3e})",
            rho=rho,
            residual=residual,
            iterations=it,
        )
    x = np.asarray(x, dtype=np.float64)
    x = x / x.max()
    x.setflags(write=False)
    return SpectralResult(float(rho), x, float(residual), int(it))


def row_sum_bounds(B, tol: float = ROW_SUM_EQ_TOL) -> tuple[float, float, bool]:
    """Min and max row sum of ``B`` and whether they coincide (relative ``tol``)."""
    r = row_sums(B)
    lo, hi = float(r.min()), float(r.max())
    return lo, hi, (hi - lo) <= tol * max(1.0, abs(hi))


# --- plain-text matrix and vector files ------------------------------------


def _tokens(line: str):
    """Yield ``(column, token)`` pairs with 1-based columns."""
    col = 0
    for part in line.split():
        col = line.index(part, col)
        yield col + 1, part
        col += len(part)


def _parse_real(tok: str, line: int, col: int, source: str | None) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"expected a decimal real, got {tok!r}", line, col, source) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", line, col, source)
    if v < 0:
        raise ParseError(f"negative value {tok!r}", line, col, source)
    return v


def _header(lines: list[str], source: str | None) -> tuple[int, int]:
    """Locate the order line; returns ``(n, index_of_next_line)``."""
    for idx, line in enumerate(lines):
        toks = list(_tokens(line))
        if not toks:
            continue
        col, tok = toks[0]
        if len(toks) > 1:
            raise ParseError("order line must hold a single integer", idx + 1, toks[1][0], source)
        try:
            n = int(tok)
        except ValueError:
            raise ParseError(f"expected matrix order, got {tok!r}", idx + 1, col, source) from None
        if n < 1:
            raise ParseError("order must be positive", idx + 1, col, source)
        return n, idx + 1
    raise ParseError("empty input", 1, 1, source)


def parse_matrix(text: str, source: str | None = None) -> np.ndarray:
    """Parse ``n`` followed by ``n`` rows of ``n`` reals."""
    lines = text.splitlines()
    n, start = _header(lines, source)
    rows: list[list[float]] = []
    for idx in range(start, len(lines)):
        toks = list(_tokens(lines[idx]))
        if not toks:
            continue
        if len(rows) == n:
            raise ParseError("extra data after last matrix row", idx + 1, toks[0][0], source)
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else len(lines[idx]) + 1
            raise ParseError(f"expected {n} entries, found {len(toks)}", idx + 1, col, source)
        rows.append([_parse_real(t, idx + 1, c, source) for c, t in toks])
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", len(lines) + 1, 1, source)
    return np.array(rows, dtype=np.float64)


def parse_vector(text: str, source: str | None = None) -> np.ndarray:
    """Parse ``n`` followed by ``n`` reals spread over any number of lines."""
    lines = text.splitlines()
    n, start = _header(lines, source)
    vals: list[float] = []
    last = (start, 1)
    for idx in range(start, len(lines)):
        for col, tok in _tokens(lines[idx]):
            if len(vals) == n:
                raise ParseError("extra data after last entry", idx + 1, col, source)
            vals.append(_parse_real(tok, idx + 1, col, source))
            last = (idx + 1, col)
    if len(vals) != n:
        raise ParseError(f"expected {n} entries, found {len(vals)}", last[0], last[1], source)
    return np.array(vals, dtype=np.float64)


def read_matrix(path: str | Path) -> np.ndarray:
    path = Path(path)
    return parse_matrix(path.read_text(), source=str(path))


def read_vector(path: str | Path) -> np.ndarray:
    path = Path(path)
    return parse_vector(path.read_text(), source=str(path))


def format_matrix(A) -> str:
    A = np.asarray(A, dtype=np.float64)
    out = io.StringIO()
    write_matrix(A, out)
    return out.getvalue()


def write_matrix(A, fh: TextIO) -> None:
    A = np.asarray(A, dtype=np.float64)
    fh.write(f"{A.shape[0]}\n")
    for row in A:
        fh.write(" ".join(repr(float(v)) for v in row) + "\n")
