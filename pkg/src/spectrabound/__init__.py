"""Sharp two-sided bounds for the Perron root of ``A + diag(t)`` and the
adjacency, signless Laplacian, distance and distance signless Laplacian
spectral radii of graphs and digraphs."""

from ._backend import BACKEND
from .bounds import (
    BoundResult,
    ConditionII,
    EqualityDiagnosis,
    ShiftedSystem,
    Side,
    check_condition_i,
    check_condition_ii,
    corollary_bounds,
    diagnose_equality,
    f_value,
    prior_equality_condition,
    synthesize_condition_ii,
    theorem_bounds,
)
from .graphs import (
    Digraph,
    Graph,
    MatrixKind,
    build_system,
    classify,
    degree_stats,
    distance_stats,
    generate,
    parse_graph,
)
from .matcore import (
    SpectralResult,
    is_irreducible,
    row_sum_bounds,
    row_sums,
    spectral_radius,
    weighted_row_sums,
)
from .spectra import SpectrumKind, baseline_catalog, bounds_for, compare_report, search_problem34

__version__ = "0.1.0"
