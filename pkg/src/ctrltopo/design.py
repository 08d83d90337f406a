"""Two-stage interconnection design with a factor-2 guarantee.

Stage 1 restores the no-dilation condition: it solves a min-weight perfect
matching on a bipartite graph whose free edges are the subsystems' own
nonzeros (weight 0) and whose paid edges are the candidate interconnections.
Stage 2 restores accessibility: it contracts each subsystem's state digraph
to its strongly connected components and solves a min-weight arborescence
rooted at a master input vertex, paying only for edges that cross between
subsystems.  Each stage is exactly optimal for its own condition, so the
larger stage cost lower-bounds any feasible design and the union of the two
stage outputs costs at most twice the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import graphs
from .errors import (
    Infeasible,
    NoPerfectMatching,
    NotSpannable,
    Stage1Infeasible,
    Stage2Infeasible,
)
from .model import (
    CompositeInstance,
    InterconnectionEdge,
    assemble_composite,
    check_structural_controllability,
    union_instance,
)

__all__ = [
    "Stage1Graph",
    "CondensationGraph",
    "DesignResult",
    "build_stage1_bipartite",
    "stage1",
    "build_condensation",
    "stage2",
    "design",
    "design_weighted",
    "design_switched",
]


@dataclass(frozen=True)
class Stage1Graph:
    """The stage-1 bipartite graph with its two edge classes.

    Left vertices are row copies of every composite state; right vertices are
    all composite states followed by all composite inputs.  ``internal_edges``
    (weight 0) come from the subsystems' own patterns, ``cross_edges`` (weight
    1, or the edge cost when weighted) each stand for one candidate
    interconnection.
    """

    graph: graphs.BipartiteGraph
    internal_edges: frozenset[tuple[int, int]]
    cross_edges: Mapping[tuple[int, int], InterconnectionEdge]


@dataclass(frozen=True)
class CondensationGraph:
    """Per-subsystem SCC condensation plus a master input vertex.

    ``scc_nodes[q]`` is a pair (subsystem index, sorted local states).  The
    master input vertex has index ``len(scc_nodes)``.  Edge classes:

    * ``e1`` — weight-0 edges inside one subsystem, following its pattern;
    * ``e2`` — paid edges between SCCs of distinct subsystems, one per
      admissible ordered pair, realizable by any of ``e2_realizers[edge]``;
    * ``e3`` — weight-0 edges from the master input to every SCC containing
      an input-accessible state of its own subsystem.
    """

    scc_nodes: tuple[tuple[int, tuple[int, ...]], ...]
    master_input: int
    e1: tuple[tuple[int, int], ...]
    e2: tuple[tuple[int, int], ...]
    e3: tuple[tuple[int, int], ...]
    e2_realizers: Mapping[tuple[int, int], tuple[InterconnectionEdge, ...]]
    e2_weights: Mapping[tuple[int, int], float]


@dataclass(frozen=True)
class DesignResult:
    """Everything the two-stage designer produces.

    ``lower_bound`` is the larger stage cost, which no feasible design can
    beat; ``ratio_bound = union_cost / lower_bound`` is therefore a certified
    approximation factor for this instance (defined as 1 when the lower bound
    is 0, which only happens when no edges are needed at all).  Costs are
    cardinalities when unweighted and edge-cost sums when weighted.
    """

    stage1_edges: tuple[InterconnectionEdge, ...]
    stage1_cost: float
    stage2_edges: tuple[InterconnectionEdge, ...]
    stage2_cost: float
    union_edges: tuple[InterconnectionEdge, ...]
    union_cost: float
    lower_bound: float
    ratio_bound: float
    weighted: bool


def build_stage1_bipartite(inst: CompositeInstance, weighted: bool = False) -> Stage1Graph:
    """Bipartite graph whose min-weight perfect matchings solve stage 1."""
    n = inst.total_states
    internal: set[tuple[int, int]] = set()
    for sub in inst.subsystems:
        soff = inst.state_offsets[sub.index]
        ioff = inst.input_offsets[sub.index]
        for r, c in sub.a_pattern.nonzeros:
            internal.add((soff + r, soff + c))
        for r, c in sub.b_pattern.nonzeros:
            internal.add((soff + r, n + ioff + c))
    cross: dict[tuple[int, int], InterconnectionEdge] = {}
    weights: dict[tuple[int, int], float] = {}
    for edge in inst.candidate_edges():
        left = inst.global_state(edge.dst_subsystem, edge.dst_state)
        right = inst.global_state(edge.src_subsystem, edge.src_state)
        cross[(left, right)] = edge
        weights[(left, right)] = inst.edge_cost(edge) if weighted else 1.0
    graph = graphs.BipartiteGraph(
        n, n + inst.total_inputs, list(internal) + list(cross), weights)
    return Stage1Graph(graph=graph, internal_edges=frozenset(internal), cross_edges=cross)


def stage1(inst: CompositeInstance, weighted: bool = False
           ) -> tuple[tuple[InterconnectionEdge, ...], float]:
    """Cheapest interconnection set restoring the no-dilation condition.

    Exactly optimal for that condition alone: a perfect matching paying w on
    cross edges exists iff the corresponding interconnection set removes all
    dilations, so the min-weight matching cost is the true stage optimum.
    Raises :class:`Stage1Infeasible` when even all candidates together leave
    a dilation.
    """
    s1 = build_stage1_bipartite(inst, weighted)
    try:
        matching = graphs.min_weight_perfect_matching(s1.graph)
    except NoPerfectMatching as exc:
        raise Stage1Infeasible(
            "no perfect matching exists even with every candidate interconnection") from exc
    chosen = sorted((s1.cross_edges[p] for p in matching.pairs if p in s1.cross_edges),
                    key=InterconnectionEdge.key)
    cost = _edge_total(inst, chosen, weighted)
    return tuple(chosen), cost


def _edge_total(inst, edges, weighted):
    if not weighted:
        return len(edges)
    return float(sum(inst.edge_cost(e) for e in edges))


def _local_digraph(sub):
    """State digraph of one subsystem (inputs excluded): column feeds row."""
    return graphs.DiGraph(sub.state_dim, [(c, r) for r, c in sub.a_pattern.nonzeros])


def build_condensation(inst: CompositeInstance, weighted: bool = False) -> CondensationGraph:
    """Condensation graph whose arborescences solve stage 2."""
    nodes: list[tuple[int, tuple[int, ...]]] = []
    comp_of_state: dict[tuple[int, int], int] = {}
    for sub in inst.subsystems:
        comps = graphs.scc(_local_digraph(sub))
        for comp in comps:
            idx = len(nodes)
            nodes.append((sub.index, comp))
            for state in comp:
                comp_of_state[(sub.index, state)] = idx

    e1: set[tuple[int, int]] = set()
    for sub in inst.subsystems:
        for r, c in sub.a_pattern.nonzeros:
            g = comp_of_state[(sub.index, c)]
            h = comp_of_state[(sub.index, r)]
            if g != h:
                e1.add((g, h))

    e2: list[tuple[int, int]] = []
    realizers: dict[tuple[int, int], tuple[InterconnectionEdge, ...]] = {}
    e2_weights: dict[tuple[int, int], float] = {}
    node_range: dict[int, tuple[int, int]] = {}
    start = 0
    for sub in inst.subsystems:
        count = sum(1 for q in range(start, len(nodes)) if nodes[q][0] == sub.index)
        node_range[sub.index] = (start, start + count)
        start += count
    for i in range(inst.subsystem_count):
        for j in sorted(inst.neighbors[i]):
            for g in range(*node_range[i]):
                for h in range(*node_range[j]):
                    pairs = tuple(
                        InterconnectionEdge(i, q, j, p)
                        for q in nodes[g][1] for p in nodes[h][1])
                    e2.append((g, h))
                    realizers[(g, h)] = pairs
                    if weighted:
                        e2_weights[(g, h)] = min(inst.edge_cost(e) for e in pairs)
                    else:
                        e2_weights[(g, h)] = 1.0

    master = len(nodes)
    e3: list[tuple[int, int]] = []
    for sub in inst.subsystems:
        n_i, m_i = sub.state_dim, sub.input_dim
        dedges = [(c, r) for r, c in sub.a_pattern.nonzeros]
        dedges += [(n_i + c, r) for r, c in sub.b_pattern.nonzeros]
        local = graphs.DiGraph(n_i + m_i, dedges)
        reached = graphs.reachable_from(local, range(n_i, n_i + m_i)) if m_i else set()
        seen: set[int] = set()
        for state in sorted(reached & set(range(n_i))):
            node = comp_of_state[(sub.index, state)]
            if node not in seen:
                seen.add(node)
                e3.append((master, node))

    return CondensationGraph(
        scc_nodes=tuple(nodes),
        master_input=master,
        e1=tuple(sorted(e1)),
        e2=tuple(sorted(e2)),
        e3=tuple(sorted(e3)),
        e2_realizers=realizers,
        e2_weights=e2_weights,
    )


def _realize(inst: CompositeInstance, cond: CondensationGraph,
             cedge: tuple[int, int], weighted: bool) -> InterconnectionEdge:
    """Pick the concrete state pair standing for a chosen condensation edge.

    Unweighted: the lexicographically smallest (src_state, dst_state)
    realizer.  Weighted: the cheapest realizer, ties broken the same way.
    """
    options = cond.e2_realizers[cedge]
    if not weighted:
        return options[0]
    best = options[0]
    best_cost = inst.edge_cost(best)
    for cand in options[1:]:
        c = inst.edge_cost(cand)
        if c < best_cost:
            best, best_cost = cand, c
    return best


def stage2(inst: CompositeInstance, weighted: bool = False
           ) -> tuple[tuple[InterconnectionEdge, ...], float]:
    """Cheapest interconnection set restoring accessibility.

    Exactly optimal for that condition alone: any accessibility-restoring set
    must enter each chosen condensation node through some paid edge, and a
    min-weight arborescence rooted at the master input picks the cheapest
    such entries.  Raises :class:`Stage2Infeasible` when even all candidates
    together leave some state inaccessible.
    """
    cond = build_condensation(inst, weighted)
    weights = {e: 0.0 for e in cond.e1}
    weights.update({e: 0.0 for e in cond.e3})
    weights.update({e: cond.e2_weights[e] for e in cond.e2})
    g = graphs.DiGraph(cond.master_input + 1,
                       list(cond.e1) + list(cond.e2) + list(cond.e3), weights)
    try:
        arb = graphs.min_spanning_arborescence(g, cond.master_input)
    except NotSpannable as exc:
        raise Stage2Infeasible(
            "some state stays inaccessible even with every candidate interconnection") from exc
    e2set = set(cond.e2)
    chosen = sorted((_realize(inst, cond, e, weighted) for e in arb.edges if e in e2set),
                    key=InterconnectionEdge.key)
    cost = _edge_total(inst, chosen, weighted)
    return tuple(chosen), cost


def _design(inst: CompositeInstance, weighted: bool) -> DesignResult:
    full = list(inst.candidate_edges())
    a_all, b_all = assemble_composite(inst, full)
    dims = [s.state_dim for s in inst.subsystems]
    report = check_structural_controllability(a_all, b_all, state_dims=dims)
    if not report.controllable:
        raise Infeasible(
            "instance stays structurally uncontrollable even with every candidate edge",
            inaccessible_states=report.inaccessible_states,
            matching_deficiency=inst.total_states - report.matching_size)

    s1_edges, s1_cost = stage1(inst, weighted)
    s2_edges, s2_cost = stage2(inst, weighted)
    by_key = {e.key(): e for e in s2_edges}
    by_key.update({e.key(): e for e in s1_edges})
    union = tuple(by_key[k] for k in sorted(by_key))
    union_cost = _edge_total(inst, union, weighted)
    lower = max(s1_cost, s2_cost)
    ratio = (union_cost / lower) if lower > 0 else 1.0

    a_u, b_u = assemble_composite(inst, union)
    verify = check_structural_controllability(a_u, b_u, state_dims=dims)
    if not verify.controllable:
        raise RuntimeError("internal error: designed edge set failed verification")

    return DesignResult(
        stage1_edges=s1_edges, stage1_cost=s1_cost,
        stage2_edges=s2_edges, stage2_cost=s2_cost,
        union_edges=union, union_cost=union_cost,
        lower_bound=lower, ratio_bound=ratio, weighted=weighted)


def design(inst: CompositeInstance) -> DesignResult:
    """Run both stages and return their union with its certificate.

    Raises :class:`Infeasible` (with diagnostics) when no admissible edge set
    can make the composite structurally controllable.
    """
    return _design(inst, weighted=False)


def design_weighted(inst: CompositeInstance) -> DesignResult:
    """Weighted variant: minimizes summed edge costs instead of edge counts.

    Instances without a weight map are treated as uniformly weighted with
    cost 1, which reproduces :func:`design` exactly.
    """
    return _design(inst, weighted=True)


def design_switched(inst: CompositeInstance, weighted: bool = False) -> DesignResult:
    """Design for a switched instance: solve the union, then attribute modes.

    An interconnection is wired permanently but only carries information in
    modes whose neighbor map admits it; making the union system controllable
    is the design target, and each chosen edge is attributed to the smallest
    mode index that admits it.  Raises :class:`NoModes` on non-switched
    instances.
    """
    flat = union_instance(inst)
    result = _design(flat.instance, weighted)

    def tag(edges):
        return tuple(
            e.with_mode(flat.mode_sets[(e.src_subsystem, e.dst_subsystem)][0])
            for e in edges)

    return DesignResult(
        stage1_edges=tag(result.stage1_edges), stage1_cost=result.stage1_cost,
        stage2_edges=tag(result.stage2_edges), stage2_cost=result.stage2_cost,
        union_edges=tag(result.union_edges), union_cost=result.union_cost,
        lower_bound=result.lower_bound, ratio_bound=result.ratio_bound,
        weighted=result.weighted)
