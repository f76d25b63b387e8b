"""Two-sided pair bounds for the Perron root of ``A + diag(t)`` and their equality cases.

Indices in this module are 0-based (numpy convention); reports convert to
1-based at the edge.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, InfeasibleShift, NotIrreducible, ToleranceConflict, ValidationError
from .matcore import as_nonneg_matrix, is_irreducible, spectral_radius

TOL_CHAIN = 1e-9
TOL_ATTAIN = 1e-7


@dataclass(frozen=True, eq=False)
class ShiftedSystem:
    """``B = A + diag(t)`` with the cached row sums ``r``, weighted sums ``s``
    and ratios ``c = s / r``.

    ``A`` must be irreducible with zero diagonal and ``t >= 0``.
    """

    A: np.ndarray
    t: np.ndarray
    r: np.ndarray = field(init=False, repr=False)
    s: np.ndarray = field(init=False, repr=False)
    c: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        A = as_nonneg_matrix(self.A, zero_diagonal=True, min_order=2)
        t = np.array(self.t, dtype=np.float64)
        n = A.shape[0]
        if t.shape != (n,):
            raise ValidationError(f"shift vector has shape {t.shape}, expected ({n},)")
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise ValidationError("shift vector must be finite and nonnegative")
        if not is_irreducible(A):
            raise NotIrreducible("A is not irreducible (support digraph not strongly connected)")
        t.setflags(write=False)
        r = A.sum(axis=1)
        s = A @ r
        c = s / r
        for arr in (r, s, c):
            arr.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "c", c)

    @classmethod
    def corollary(cls, A) -> "ShiftedSystem":
        """The system with the row sums of ``A`` on the diagonal."""
        A = as_nonneg_matrix(A, zero_diagonal=True, min_order=2)
        return cls(A, A.sum(axis=1))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def B(self) -> np.ndarray:
        return self.A + np.diag(self.t)

    def permuted(self, perm) -> "ShiftedSystem":
        """Simultaneous row/column permutation: new index ``k`` is old ``perm[k]``."""
        perm = np.asarray(perm)
        return ShiftedSystem(self.A[np.ix_(perm, perm)], self.t[perm])


@dataclass(frozen=True)
class BoundResult:
    lower: float
    upper: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]
    pair_values: list[tuple[int, int, float]]


def _pair_f(sys: ShiftedSystem, i, j):
    t, s, r = sys.t, sys.s, sys.r
    # parenthesised products keep f(i, j) == f(j, i) bit for bit
    disc = (t[i] - t[j]) ** 2 + 4.0 * ((s[i] * s[j]) / (r[i] * r[j]))
    return (t[i] + t[j] + np.sqrt(disc)) / 2.0


def f_value(sys: ShiftedSystem, i: int, j: int) -> float:
    n = sys.n
    for k in (i, j):
        if not 0 <= k < n:
            raise IndexOutOfRange(f"index {k} outside [0, {n - 1}]")
    return float(_pair_f(sys, i, j))


def theorem_bounds(sys: ShiftedSystem) -> BoundResult:
    """Min and max of ``f(i, j)`` over ordered pairs with ``A[i, j] != 0``."""
    ii, jj = np.nonzero(sys.A)
    vals = _pair_f(sys, ii, jj)
    kmin = int(np.argmin(vals))
    kmax = int(np.argmax(vals))
    pairs = [(int(i), int(j), float(v)) for i, j, v in zip(ii, jj, vals)]
    return BoundResult(
        lower=float(vals[kmin]),
        upper=float(vals[kmax]),
        argmin=(int(ii[kmin]), int(jj[kmin])),
        argmax=(int(ii[kmax]), int(jj[kmax])),
        pair_values=pairs,
    )


def corollary_bounds(A) -> BoundResult:
    return theorem_bounds(ShiftedSystem.corollary(A))


# --- equality conditions ----------------------------------------------------


def check_condition_i(sys: ShiftedSystem, tol: float = TOL_CHAIN) -> bool:
    """``t_i + s_i/r_i`` is the same for every ``i`` (relative ``tol``)."""
    v = sys.t + sys.c
    return float(v.max() - v.min()) <= tol * max(1.0, float(np.abs(v).max()))


def two_coloring(A) -> np.ndarray | None:
    """Proper 2-colouring of the symmetrised support, or ``None`` if an odd cycle exists.

    Colour 0 always contains vertex 0. Vertices unreachable from 0 get colour -1.
    """
    sym = (np.asarray(A) != 0)
    sym = sym | sym.T
    n = sym.shape[0]
    color = np.full(n, -1, dtype=np.int64)
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(sym[u]):
            if color[v] < 0:
                color[v] = 1 - color[u]
                queue.append(int(v))
            elif color[v] == color[u]:
                return None
    return color


@dataclass(frozen=True)
class ConditionII:
    """Bipartition ``U | W`` and scale ``l`` with ``t_i + l c_i = m`` on ``U``
    and ``t_j + c_j / l = m`` on ``W``."""

    U: tuple[int, ...]
    W: tuple[int, ...]
    l: float
    m: float

    def swapped(self) -> "ConditionII":
        return ConditionII(self.W, self.U, 1.0 / self.l, self.m)

    def oriented(self, lower: bool) -> "ConditionII":
        """Orientation with ``l >= 1`` (lower reading) or ``l <= 1`` (upper reading)."""
        if (self.l < 1.0) == lower:
            return self.swapped()
        return self

    def chain_values(self, sys: ShiftedSystem) -> np.ndarray:
        v = np.empty(sys.n)
        U, W = list(self.U), list(self.W)
        v[U] = sys.t[U] + self.l * sys.c[U]
        v[W] = sys.t[W] + sys.c[W] / self.l
        return v

    def verify(self, sys: ShiftedSystem, tol: float = TOL_CHAIN) -> bool:
        if not (self.l > 0 and math.isfinite(self.l)):
            return False
        if not _is_partitioned(sys.A, self.U, self.W):
            return False
        v = self.chain_values(sys)
        return float(np.abs(v - self.m).max()) <= tol * max(1.0, abs(self.m))


def _is_partitioned(A, U, W) -> bool:
    n = A.shape[0]
    if not U or not W or len(U) + len(W) != n or set(U) & set(W):
        return False
    U, W = list(U), list(W)
    return not (np.any(A[np.ix_(U, U)]) or np.any(A[np.ix_(W, W)]))


def _linear_scale(t, c, idx, tol):
    """Scale from the two most separated ``c`` values inside one part."""
    if len(idx) < 2:
        return None
    k1 = idx[int(np.argmax(c[idx]))]
    k2 = idx[int(np.argmin(c[idx]))]
    dc = c[k1] - c[k2]
    if dc <= tol * max(1.0, c[k1]):
        return None
    return (t[k2] - t[k1]) / dc


def _quadratic_scale(ci, cj, ti, tj):
    """Positive root of ``ci l^2 + (ti - tj) l - cj = 0``."""
    b = ti - tj
    root = math.sqrt(b * b + 4.0 * ci * cj)
    if b > 0:
        return 2.0 * cj / (b + root)
    return (root - b) / (2.0 * ci)


def check_condition_ii(sys: ShiftedSystem, tol: float = TOL_CHAIN) -> ConditionII | None:
    """Find a bipartition and scale satisfying the chain equations, if any.

    The bipartition is the 2-colouring of the symmetrised support (unique
    up to swap because the support is connected). Candidate scales are the
    linear solve inside ``U``, the linear solve inside ``W`` and the
    positive quadratic root for one cross pair; the first that verifies
    all ``n`` equations is returned, with ``U`` holding index 0.
    """
    color = two_coloring(sys.A)
    if color is None:
        return None
    U = tuple(int(k) for k in np.flatnonzero(color == 0))
    W = tuple(int(k) for k in np.flatnonzero(color == 1))
    t, c = sys.t, sys.c
    Ui, Wi = np.array(U), np.array(W)

    candidates = []
    lu = _linear_scale(t, c, Ui, tol)
    if lu is not None:
        candidates.append(lu)
    # inside W the unknown is 1/l
    inv = _linear_scale(t, c, Wi, tol)
    if inv is not None and inv != 0:
        candidates.append(1.0 / inv)
    candidates.append(_quadratic_scale(c[U[0]], c[W[0]], t[U[0]], t[W[0]]))

    for l in candidates:
        if not (l > 0 and math.isfinite(l)):
            continue
        vals = np.concatenate([t[Ui] + l * c[Ui], t[Wi] + c[Wi] / l])
        rec = ConditionII(U, W, float(l), float(vals.mean()))
        if rec.verify(sys, tol):
            return rec
    return None


class Side(enum.Enum):
    LowerAttained = "LowerAttained"
    UpperAttained = "UpperAttained"
    BothAttained = "BothAttained"
    NeitherAttained = "NeitherAttained"


@dataclass(frozen=True)
class EqualityDiagnosis:
    condition_i: bool
    condition_ii: ConditionII | None
    side: Side
    lower: float
    upper: float
    rho: float

    @property
    def attained(self) -> bool:
        return self.side is not Side.NeitherAttained


def diagnose_equality(
    sys: ShiftedSystem,
    rho: float | None = None,
    tol: float = TOL_ATTAIN,
    chain_tol: float = TOL_CHAIN,
    bounds: BoundResult | None = None,
) -> EqualityDiagnosis:
    """Decide which bound ``rho`` attains and which equality condition explains it.

    ``rho`` defaults to the power-iteration oracle. When equality holds,
    every supported ``f(i, j)`` collapses to the common chain value, so in
    exact arithmetic the attained side is always both. A lone lower
    (upper) hit orients ``condition_ii`` so that ``l > 1`` (``l < 1``).

    Raises:
        ToleranceConflict: attainment within ``tol`` disagrees with the
            structural conditions checked at ``chain_tol``.
    """
    if rho is None:
        rho = spectral_radius(sys.B).rho
    b = bounds if bounds is not None else theorem_bounds(sys)
    band = tol * max(1.0, abs(rho))
    lo_hit = abs(rho - b.lower) <= band
    hi_hit = abs(rho - b.upper) <= band
    if lo_hit and hi_hit:
        side = Side.BothAttained
    elif lo_hit:
        side = Side.LowerAttained
    elif hi_hit:
        side = Side.UpperAttained
    else:
        side = Side.NeitherAttained

    ci = check_condition_i(sys, chain_tol)
    cii = check_condition_ii(sys, chain_tol)
    structural = ci or cii is not None
    if structural != (side is not Side.NeitherAttained):
        raise ToleranceConflict(
            f"side={side.value} but condition_i={ci}, condition_ii={cii is not None} "
            f"(rho={rho!r}, lower={b.lower!r}, upper={b.upper!r})"
        )
    if cii is not None and side is Side.LowerAttained:
        cii = cii.oriented(lower=True)
    elif cii is not None and side is Side.UpperAttained:
        cii = cii.oriented(lower=False)
    return EqualityDiagnosis(ci, cii, side, b.lower, b.upper, float(rho))


def prior_equality_condition(A, tol: float = TOL_CHAIN) -> bool:
    """The earlier published criterion for the row-sum-shifted case.

    It is condition (i) alone with ``t = r``; it misses the bipartite
    chain case, so it can disagree with :func:`diagnose_equality`.
    """
    return check_condition_i(ShiftedSystem.corollary(A), tol)


def synthesize_condition_ii(support, l: float, m: float) -> ShiftedSystem:
    """Build shifts that satisfy the chain equations exactly for ``(l, m)``.

    Raises:
        InfeasibleShift: some required shift is negative; raise ``m``.
    """
    if not (l > 0 and math.isfinite(l)):
        raise ValidationError("l must be a positive finite real")
    A = as_nonneg_matrix(support, zero_diagonal=True, min_order=2)
    if not is_irreducible(A):
        raise NotIrreducible("support is not irreducible")
    color = two_coloring(A)
    if color is None:
        raise ValidationError("support is not bipartite")
    r = A.sum(axis=1)
    c = (A @ r) / r
    t = np.where(color == 0, m - l * c, m - c / l)
    if np.any(t < 0):
        k = int(np.flatnonzero(t < 0)[0])
        raise InfeasibleShift(f"shift at index {k} would be {t[k]!r} < 0; increase m")
    return ShiftedSystem(A, t)
