"""Interconnection topology design for structural controllability.

Given a collection of linear subsystems (as sparsity patterns) and a
communication structure saying which subsystem may feed state information to
which, this package designs a small set of interconnection edges that makes
the composite system structurally controllable, with a certified
approximation factor of at most two, and ships an exhaustive oracle plus a
numeric rank check to validate results on small instances.
"""

from ._backend import backend_name
from .errors import (
    CtrltopoError,
    FormatError,
    Infeasible,
    InadmissibleEdge,
    NoModes,
    NoPerfectMatching,
    NotSpannable,
    Stage1Infeasible,
    Stage2Infeasible,
    TooLarge,
)
from .graphs import (
    Arborescence,
    BipartiteGraph,
    DiGraph,
    Matching,
    max_bipartite_matching,
    min_spanning_arborescence,
    min_weight_perfect_matching,
    reachable_from,
    scc,
)
from .model import (
    CompositeInstance,
    ControllabilityReport,
    InterconnectionEdge,
    SparsityPattern,
    Subsystem,
    UnionInstance,
    assemble_composite,
    check_structural_controllability,
    dual_observability_instance,
    union_instance,
)
from .design import (
    CondensationGraph,
    DesignResult,
    Stage1Graph,
    build_condensation,
    build_stage1_bipartite,
    design,
    design_switched,
    design_weighted,
    stage1,
    stage2,
)
from .oracle import (
    NumericCheckResult,
    OracleResult,
    exact_min_for_accessibility,
    exact_min_for_matching,
    exact_min_interconnections,
    numeric_realization_check,
)
from .formats import (
    dumps_instance,
    loads_instance,
    parse_edges,
    parse_graph,
    parse_instance,
    render_edges,
    render_graph,
    render_instance,
)
from .dot import render_dot
from .generators import gen_random, gen_reduction

__version__ = "0.1.0"

__all__ = [
    "Arborescence",
    "BipartiteGraph",
    "CompositeInstance",
    "CondensationGraph",
    "ControllabilityReport",
    "CtrltopoError",
    "DesignResult",
    "DiGraph",
    "FormatError",
    "Infeasible",
    "InadmissibleEdge",
    "InterconnectionEdge",
    "Matching",
    "NoModes",
    "NoPerfectMatching",
    "NotSpannable",
    "NumericCheckResult",
    "OracleResult",
    "SparsityPattern",
    "Stage1Graph",
    "Stage1Infeasible",
    "Stage2Infeasible",
    "Subsystem",
    "TooLarge",
    "UnionInstance",
    "assemble_composite",
    "backend_name",
    "build_condensation",
    "build_stage1_bipartite",
    "check_structural_controllability",
    "design",
    "design_switched",
    "design_weighted",
    "dual_observability_instance",
    "dumps_instance",
    "exact_min_for_accessibility",
    "exact_min_for_matching",
    "exact_min_interconnections",
    "gen_random",
    "gen_reduction",
    "loads_instance",
    "max_bipartite_matching",
    "min_spanning_arborescence",
    "min_weight_perfect_matching",
    "numeric_realization_check",
    "parse_edges",
    "parse_graph",
    "parse_instance",
    "reachable_from",
    "render_dot",
    "render_edges",
    "render_graph",
    "render_instance",
    "scc",
    "stage1",
    "stage2",
    "union_instance",
    "__version__",
]
