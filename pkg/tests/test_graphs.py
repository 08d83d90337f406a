"""Graph container and algorithm tests.

The optimization routines are checked against small brute-force searches that
enumerate every feasible solution, including the lexicographic tie-break
contract (smallest pair list / edge list among optima).
"""

import itertools
import random
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrltopo import (
    Arborescence,
    BipartiteGraph,
    DiGraph,
    Matching,
    NoPerfectMatching,
    NotSpannable,
    max_bipartite_matching,
    min_spanning_arborescence,
    min_weight_perfect_matching,
    reachable_from,
    scc,
)


# ---------------------------------------------------------------- containers

def test_digraph_normalizes_and_validates():
    g = DiGraph(3, [(0, 1), (0, 1), (2, 2)])
    assert g.edges == ((0, 1), (2, 2))
    assert g.weights == (0.0, 0.0)
    with pytest.raises(ValueError):
        DiGraph(2, [(0, 5)])
    with pytest.raises(ValueError):
        DiGraph(2, [(0, 1)], {(0, 1): -1.0})
    with pytest.raises(ValueError):
        DiGraph(2, [(0, 1)], {(0, 1): float("nan")})


def test_parallel_edges_collapse_to_cheaper():
    g = DiGraph(2, [(0, 1), (0, 1)], {(0, 1): 3.0})
    assert g.weights == (3.0,)
    b = BipartiteGraph(1, 2, [(0, 0), (0, 1)], {(0, 0): 2.0, (0, 1): 0.5})
    assert b.weight((0, 1)) == 0.5


def test_bipartite_bounds_checked():
    with pytest.raises(ValueError):
        BipartiteGraph(2, 2, [(2, 0)])
    with pytest.raises(ValueError):
        BipartiteGraph(2, 2, [(0, 2)])


def test_matching_rejects_overlapping_pairs():
    with pytest.raises(ValueError):
        Matching(pairs=((0, 1), (0, 2)), total_weight=0.0)
    with pytest.raises(ValueError):
        Matching(pairs=((0, 1), (1, 1)), total_weight=0.0)


# ----------------------------------------------------------------------- scc

def test_scc_three_singletons_in_topological_order():
    # 0 feeds 1 and 2; 2 has a self-loop.  Three components, sources first.
    g = DiGraph(3, [(0, 1), (0, 2), (2, 2)])
    assert scc(g) == ((0,), (1,), (2,))


def test_scc_two_cycle_merges():
    g = DiGraph(2, [(0, 1), (1, 0)])
    assert scc(g) == ((0, 1),)


def test_scc_canonical_order_breaks_ties_by_smallest_member():
    # Components {0}, {1}, {2} with no edges at all: order by member.
    g = DiGraph(3, [])
    assert scc(g) == ((0,), (1,), (2,))
    # 2 -> 0: component {2} must precede {0}; {1} slots by smallest member.
    g2 = DiGraph(3, [(2, 0)])
    assert scc(g2) == ((1,), (2,), (0,))


@st.composite
def small_digraphs(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pairs, max_size=n * n))
    return DiGraph(n, edges)


@settings(max_examples=120, deadline=None)
@given(small_digraphs())
def test_scc_is_a_partition_in_topological_order(g):
    comps = scc(g)
    seen = [v for comp in comps for v in comp]
    assert sorted(seen) == list(range(g.vertex_count))
    position = {}
    for idx, comp in enumerate(comps):
        assert list(comp) == sorted(comp)
        for v in comp:
            position[v] = idx
    for a, b in g.edges:
        assert position[a] <= position[b]


@settings(max_examples=60, deadline=None)
@given(small_digraphs())
def test_scc_members_are_mutually_reachable(g):
    comps = scc(g)
    for comp in comps:
        for v in comp:
            reached = reachable_from(g, [v])
            assert set(comp) <= reached


# ----------------------------------------------------------- reachable_from

def test_reachable_from_follows_edges():
    g = DiGraph(4, [(0, 1), (1, 2)])
    assert reachable_from(g, [0]) == {0, 1, 2}
    assert reachable_from(g, [3]) == {3}
    assert reachable_from(g, []) == set()


def test_reachable_from_rejects_bad_source():
    with pytest.raises(ValueError):
        reachable_from(DiGraph(2, []), [5])


@settings(max_examples=60, deadline=None)
@given(small_digraphs(), st.integers(0, 6))
def test_reachability_is_transitively_closed(g, s):
    s = s % g.vertex_count
    reached = reachable_from(g, [s])
    for a, b in g.edges:
        if a in reached:
            assert b in reached


# ------------------------------------------------------------- max matching

def brute_max_matching_size(nl, edges):
    adj = [[r for l2, r in edges if l2 == l] for l in range(nl)]

    def rec(l, used):
        if l == nl:
            return 0
        best = rec(l + 1, used)
        for r in adj[l]:
            if not used & (1 << r):
                best = max(best, 1 + rec(l + 1, used | (1 << r)))
        return best

    return rec(0, 0)


def test_max_matching_basics():
    assert max_bipartite_matching(BipartiteGraph(3, 3, [])).size == 0
    complete = BipartiteGraph(3, 3, [(l, r) for l in range(3) for r in range(3)])
    assert max_bipartite_matching(complete).size == 3
    star = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 0)])
    m = max_bipartite_matching(star)
    assert m.size == 1
    assert m.pairs == ((0, 0),)


@st.composite
def small_bipartites(draw, max_left=6, max_right=6, weighted=False):
    nl = draw(st.integers(1, max_left))
    nr = draw(st.integers(1, max_right))
    pairs = st.tuples(st.integers(0, nl - 1), st.integers(0, nr - 1))
    edges = draw(st.lists(pairs, unique=True, max_size=nl * nr))
    weights = None
    if weighted:
        weights = {e: draw(st.integers(0, 4)) for e in edges}
    return BipartiteGraph(nl, nr, edges, weights)


@settings(max_examples=150, deadline=None)
@given(small_bipartites())
def test_max_matching_cardinality_equals_exhaustive(b):
    m = max_bipartite_matching(b)
    assert m.size == brute_max_matching_size(b.left_count, b.edges)
    assert set(m.pairs) <= set(b.edges)


# ------------------------------------------- min-weight perfect matching

def brute_min_perfect(b):
    """(cost, lex-smallest assignment) over all left-saturating matchings."""
    adj = [[] for _ in range(b.left_count)]
    wt = dict(zip(b.edges, b.weights))
    for l, r in b.edges:
        adj[l].append(r)
    for rs in adj:
        rs.sort()
    best = None
    assign = [-1] * b.left_count

    def rec(l, used, cost):
        nonlocal best
        if l == b.left_count:
            key = (cost, list(assign))
            if best is None or key < best:
                best = key
            return
        for r in adj[l]:
            if not used & (1 << r):
                assign[l] = r
                rec(l + 1, used | (1 << r), cost + wt[(l, r)])
                assign[l] = -1

    rec(0, 0, 0)
    return best


def test_min_weight_perfect_matching_simple():
    b = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0)], {(0, 0): 5, (0, 1): 1, (1, 0): 1})
    m = min_weight_perfect_matching(b)
    assert m.pairs == ((0, 1), (1, 0))
    assert m.total_weight == 2


def test_min_weight_perfect_matching_prefers_lex_smallest_optimum():
    # Two optimal assignments of equal weight; the pair list (0,0),(1,1) wins.
    b = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    m = min_weight_perfect_matching(b)
    assert m.pairs == ((0, 0), (1, 1))
    assert m.total_weight == 0.0


def test_min_weight_perfect_matching_infeasible():
    with pytest.raises(NoPerfectMatching):
        min_weight_perfect_matching(BipartiteGraph(2, 2, [(0, 0), (1, 0)]))


def test_min_weight_perfect_matching_requires_enough_rights():
    with pytest.raises(ValueError):
        min_weight_perfect_matching(BipartiteGraph(3, 2, [(0, 0)]))


@settings(max_examples=200, deadline=None)
@given(small_bipartites(max_left=5, max_right=6, weighted=True))
def test_min_weight_perfect_matching_equals_exhaustive(b):
    if b.left_count > b.right_count:
        b = BipartiteGraph(b.right_count, b.left_count,
                           [(r, l) for l, r in b.edges],
                           {(r, l): w for (l, r), w in zip(b.edges, b.weights)})
    expected = brute_min_perfect(b)
    if expected is None:
        with pytest.raises(NoPerfectMatching):
            min_weight_perfect_matching(b)
        return
    m = min_weight_perfect_matching(b)
    cost, assign = expected
    assert m.total_weight == cost
    assert m.pairs == tuple((l, assign[l]) for l in range(b.left_count))


def test_min_weight_perfect_matching_seeded_corpus():
    rng = random.Random(20240817)
    for _ in range(300):
        nl = rng.randint(1, 5)
        nr = rng.randint(nl, 7)
        edges = {}
        for l in range(nl):
            for r in range(nr):
                if rng.random() < 0.55:
                    edges[(l, r)] = rng.randint(0, 3)
        b = BipartiteGraph(nl, nr, list(edges), edges)
        expected = brute_min_perfect(b)
        if expected is None:
            with pytest.raises(NoPerfectMatching):
                min_weight_perfect_matching(b)
            continue
        m = min_weight_perfect_matching(b)
        assert m.total_weight == expected[0]
        assert m.pairs == tuple((l, expected[1][l]) for l in range(nl))


# ------------------------------------------------------------- arborescence

def brute_arborescence(g, root):
    """(cost, lex-smallest sorted edge list) over all spanning arborescences."""
    n = g.vertex_count
    wt = dict(zip(g.edges, g.weights))
    in_edges = {v: [e for e in g.edges if e[1] == v and e[0] != e[1]]
                for v in range(n) if v != root}
    if any(not lst for lst in in_edges.values()):
        return None
    best = None
    others = [v for v in range(n) if v != root]
    for combo in itertools.product(*(in_edges[v] for v in others)):
        adj = {v: [] for v in range(n)}
        for u, v in combo:
            adj[u].append(v)
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != n:
            continue
        cost = sum(wt[e] for e in combo)
        key = (cost, sorted(combo))
        if best is None or key < best:
            best = key
    return best


def test_arborescence_simple_chain():
    g = DiGraph(3, [(0, 1), (1, 2), (0, 2)], {(0, 1): 1, (1, 2): 1, (0, 2): 5})
    a = min_spanning_arborescence(g, 0)
    assert a.edges == ((0, 1), (1, 2))
    assert a.total_weight == 2


def test_arborescence_must_break_cycle():
    # Cheap 2-cycle between 1 and 2 plus expensive entries from the root.
    g = DiGraph(3, [(1, 2), (2, 1), (0, 1), (0, 2)],
                {(1, 2): 0, (2, 1): 0, (0, 1): 4, (0, 2): 5})
    a = min_spanning_arborescence(g, 0)
    assert a.total_weight == 4
    assert a.edges == ((0, 1), (1, 2))


def test_arborescence_not_spannable():
    with pytest.raises(NotSpannable):
        min_spanning_arborescence(DiGraph(3, [(0, 1)]), 0)


def test_arborescence_lex_tie_break():
    # All zero weights, several spanning trees; smallest edge list wins.
    g = DiGraph(3, [(0, 1), (0, 2), (1, 2), (2, 1)])
    a = min_spanning_arborescence(g, 0)
    assert a.edges == ((0, 1), (0, 2))


def test_arborescence_single_vertex():
    a = min_spanning_arborescence(DiGraph(1, []), 0)
    assert a.edges == ()
    assert a.total_weight == 0


@st.composite
def small_weighted_digraphs(draw):
    n = draw(st.integers(2, 6))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pairs, unique=True, min_size=1, max_size=14))
    weights = {e: draw(st.integers(0, 3)) for e in edges}
    return DiGraph(n, edges, weights)


@settings(max_examples=120, deadline=None)
@given(small_weighted_digraphs())
def test_arborescence_equals_exhaustive(g):
    expected = brute_arborescence(g, 0)
    if expected is None:
        with pytest.raises(NotSpannable):
            min_spanning_arborescence(g, 0)
        return
    a = min_spanning_arborescence(g, 0)
    assert a.total_weight == expected[0]
    assert list(a.edges) == expected[1]


def test_arborescence_seeded_corpus():
    rng = random.Random(7091)
    for _ in range(250):
        n = rng.randint(2, 7)
        edges = {}
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.4:
                    edges[(u, v)] = rng.randint(0, 3)
        g = DiGraph(n, list(edges), edges)
        expected = brute_arborescence(g, 0)
        if expected is None:
            with pytest.raises(NotSpannable):
                min_spanning_arborescence(g, 0)
            continue
        a = min_spanning_arborescence(g, 0)
        assert a.total_weight == expected[0]
        assert list(a.edges) == expected[1]


def test_condensation_shaped_arborescence_weight():
    # Seven component vertices plus a master source (vertex 7); free edges
    # inside blocks and from the source, unit-cost edges between blocks.
    free = [(0, 1), (0, 2), (5, 6), (7, 0), (7, 1), (7, 2)]
    paid = [(0, 4), (1, 4), (2, 4), (3, 0), (3, 1), (3, 2), (4, 3), (4, 5), (4, 6)]
    weights = {e: 0 for e in free}
    weights.update({e: 1 for e in paid})
    g = DiGraph(8, free + paid, weights)
    a = min_spanning_arborescence(g, 7)
    assert a.total_weight == 3


# ---------------------------------------------------------------- mechanics

def test_results_are_deterministic_and_pure():
    edges = [(0, 1), (1, 0), (1, 2), (2, 0), (0, 2)]
    weights = {e: i % 3 for i, e in enumerate(edges)}
    g = DiGraph(3, edges, weights)
    before = (g.edges, g.weights)
    runs = [min_spanning_arborescence(g, 0) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    assert (g.edges, g.weights) == before

    b = BipartiteGraph(3, 3, [(l, r) for l in range(3) for r in range(3)],
                       {(l, r): (l * r) % 2 for l in range(3) for r in range(3)})
    assert min_weight_perfect_matching(b) == min_weight_perfect_matching(b)


def test_concurrent_calls_agree():
    g = DiGraph(50, [(i, (i * 7 + 3) % 50) for i in range(50)]
                + [(i, (i + 1) % 50) for i in range(50)])
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: scc(g), range(8)))
    assert all(r == results[0] for r in results)


def test_arborescence_type_well_formed():
    a = Arborescence(root=0, edges=((0, 1),), total_weight=1.0)
    assert a.root == 0
