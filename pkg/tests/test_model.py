"""System-model layer: patterns, subsystems, composites, controllability."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrltopo import (
    CompositeInstance,
    InadmissibleEdge,
    InterconnectionEdge,
    SparsityPattern,
    Subsystem,
    assemble_composite,
    check_structural_controllability,
    dual_observability_instance,
    union_instance,
)
from ctrltopo.errors import NoModes


# ------------------------------------------------------------------ patterns

def test_pattern_validation():
    p = SparsityPattern(2, 3, [(0, 0), (1, 2), (0, 0)])
    assert p.nonzeros == frozenset({(0, 0), (1, 2)})
    with pytest.raises(ValueError):
        SparsityPattern(0, 1, [])
    with pytest.raises(ValueError):
        SparsityPattern(2, 2, [(2, 0)])
    with pytest.raises(ValueError):
        SparsityPattern(2, 2, [(0, -1)])


def test_pattern_transpose_and_density():
    p = SparsityPattern(2, 3, [(0, 1), (1, 2)])
    t = p.transpose()
    assert (t.rows, t.cols) == (3, 2)
    assert t.nonzeros == frozenset({(1, 0), (2, 1)})
    assert p.density() == pytest.approx(2 / 6)
    assert SparsityPattern(2, 0, []).density() == 0.0


def test_subsystem_shape_checks():
    with pytest.raises(ValueError):
        Subsystem(0, SparsityPattern(2, 3, []), SparsityPattern(2, 0, []))
    with pytest.raises(ValueError):
        Subsystem(0, SparsityPattern(2, 2, []), SparsityPattern(3, 1, []))
    s = Subsystem(1, SparsityPattern(2, 2, [(0, 1)]), SparsityPattern(2, 2, []))
    assert (s.state_dim, s.input_dim) == (2, 2)


# ----------------------------------------------------------------- composite

def test_quad_instance_layout(quad):
    assert quad.total_states == 10
    assert quad.total_inputs == 1
    assert quad.state_offsets == (0, 3, 5, 8)
    assert quad.global_state(2, 1) == 6
    assert quad.locate_state(6) == (2, 1)
    assert quad.locate_state(9) == (3, 1)
    with pytest.raises(ValueError):
        quad.global_state(0, 3)
    with pytest.raises(ValueError):
        quad.locate_state(10)


def test_neighbor_map_validation(quad):
    subs = quad.subsystems
    with pytest.raises(ValueError):
        CompositeInstance(subsystems=subs, neighbors={0: [0]})  # self link
    with pytest.raises(ValueError):
        CompositeInstance(subsystems=subs, neighbors={0: [7]})
    inst = CompositeInstance(subsystems=subs, neighbors={0: [2]})
    assert inst.neighbors[3] == ()


def test_subsystem_indices_must_match_position(quad):
    subs = list(quad.subsystems)
    subs[1] = Subsystem(5, subs[1].a_pattern, subs[1].b_pattern)
    with pytest.raises(ValueError):
        CompositeInstance(subsystems=tuple(subs), neighbors={})


def test_candidate_edges_enumeration(quad):
    cand = quad.candidate_edges()
    # 0->2: 3*3, 1->0: 2*3, 2->1: 3*2, 2->3: 3*2 states on each side.
    assert len(cand) == 9 + 6 + 6 + 6
    keys = [e.key() for e in cand]
    assert keys == sorted(keys)
    assert all(e.mode is None for e in cand)
    first = cand[0]
    assert (first.src_subsystem, first.src_state) == (0, 0)
    assert (first.dst_subsystem, first.dst_state) == (2, 0)


def test_weights_must_cover_candidates_exactly(quad):
    cand = quad.candidate_edges()
    full = {e.key(): 1.0 for e in cand}
    inst = make_weighted(quad, full)
    assert inst.edge_cost(cand[0]) == 1.0
    partial = dict(full)
    partial.popitem()
    with pytest.raises(ValueError):
        make_weighted(quad, partial)
    extra = dict(full)
    extra[(0, 0, 1, 0)] = 1.0  # 1 is not a neighbor of 0
    with pytest.raises(ValueError):
        make_weighted(quad, extra)
    bad = dict(full)
    bad[cand[0].key()] = 0.0
    with pytest.raises(ValueError):
        make_weighted(quad, bad)


def make_weighted(inst, weights):
    return CompositeInstance(
        subsystems=inst.subsystems,
        neighbors={i: list(n) for i, n in enumerate(inst.neighbors)},
        weights=weights,
    )


def test_edge_cost_defaults_to_one(quad):
    e = quad.candidate_edges()[0]
    assert quad.edge_cost(e) == 1.0


def test_mode_admissibility(quad):
    # Mode 0 lets 0 and 2 send; mode 1 lets 1 and 2 send.
    modes = [{0: [2], 2: [1, 3]}, {1: [0], 2: [1, 3]}]
    inst = CompositeInstance(
        subsystems=quad.subsystems,
        neighbors={i: list(n) for i, n in enumerate(quad.neighbors)},
        modes=modes,
    )
    e0 = InterconnectionEdge(0, 0, 2, 0)
    assert inst.admits(e0.with_mode(0))
    assert not inst.admits(e0.with_mode(1))
    assert inst.admits(e0)  # untagged: admissible in some mode
    both = InterconnectionEdge(2, 0, 1, 0)
    assert inst.admits(both.with_mode(0)) and inst.admits(both.with_mode(1))
    with pytest.raises(ValueError):
        inst.admits(e0.with_mode(2))


def test_modes_union_must_equal_flat_neighbors(quad):
    with pytest.raises(ValueError):
        CompositeInstance(
            subsystems=quad.subsystems,
            neighbors={i: list(n) for i, n in enumerate(quad.neighbors)},
            modes=[{0: [2]}],  # misses 1->0, 2->1, 2->3
        )


# ------------------------------------------------------------------ assembly

def test_assemble_empty_keeps_block_diagonal(quad):
    a, b = assemble_composite(quad, [])
    assert a.rows == a.cols == 10
    assert b.rows == 10 and b.cols == 1
    # Subsystem 2's internal loop appears at global offset 5.
    assert (5 + 0, 5 + 1) in a.nonzeros
    assert (0, 0) in b.nonzeros
    # No entries outside the diagonal blocks.
    offsets = quad.state_offsets + (quad.total_states,)
    for r, c in a.nonzeros:
        blocks = [k for k in range(4) if offsets[k] <= r < offsets[k + 1]]
        assert offsets[blocks[0]] <= c < offsets[blocks[0] + 1]


def test_assemble_adds_cross_terms(quad):
    e = InterconnectionEdge(0, 1, 2, 0)  # state 1 of sub 0 -> state 0 of sub 2
    a, _ = assemble_composite(quad, [e])
    assert (quad.global_state(2, 0), quad.global_state(0, 1)) in a.nonzeros


def test_assemble_rejects_inadmissible(quad):
    with pytest.raises(InadmissibleEdge):
        assemble_composite(quad, [InterconnectionEdge(0, 0, 1, 0)])
    with pytest.raises(InadmissibleEdge):
        assemble_composite(quad, [InterconnectionEdge(0, 9, 2, 0)])


# ---------------------------------------------------- structural controllability

def test_quad_uncoupled_is_not_controllable(quad):
    a, b = assemble_composite(quad, [])
    report = check_structural_controllability(a, b, state_dims=[3, 2, 3, 2])
    assert not report.controllable
    assert not report.accessible
    # Everything outside subsystem 0 is unreachable from the input.
    assert set(report.inaccessible_states) == {
        (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1)}


def test_quad_three_edge_solution_is_controllable(quad):
    edges = [
        InterconnectionEdge(0, 1, 2, 0),
        InterconnectionEdge(2, 0, 1, 0),
        InterconnectionEdge(2, 2, 3, 0),
    ]
    a, b = assemble_composite(quad, edges)
    report = check_structural_controllability(a, b)
    assert report.controllable
    assert report.accessible
    assert report.dilation_free
    assert report.matching_size == 10


def test_single_integrator_chain_controllable():
    a = SparsityPattern(3, 3, [(1, 0), (2, 1)])
    b = SparsityPattern(3, 1, [(0, 0)])
    r = check_structural_controllability(a, b)
    assert r.controllable and r.matching_size == 3


def test_dilation_detected():
    # Two states driven by one shared source state: accessible yet deficient.
    a = SparsityPattern(3, 3, [(1, 0), (2, 0)])
    b = SparsityPattern(3, 1, [(0, 0)])
    r = check_structural_controllability(a, b)
    assert r.accessible
    assert not r.dilation_free
    assert r.matching_size == 2
    assert not r.controllable


def test_zero_input_never_controllable():
    a = SparsityPattern(1, 1, [(0, 0)])
    b = SparsityPattern(1, 0, [])
    r = check_structural_controllability(a, b)
    assert not r.accessible
    assert not r.controllable


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        check_structural_controllability(SparsityPattern(2, 3, []),
                                         SparsityPattern(2, 1, []))
    with pytest.raises(ValueError):
        check_structural_controllability(SparsityPattern(2, 2, []),
                                         SparsityPattern(3, 1, []))
    with pytest.raises(ValueError):
        check_structural_controllability(SparsityPattern(2, 2, []),
                                         SparsityPattern(2, 1, []),
                                         state_dims=[1, 2])


# -------------------------------------------------------------------- duality

def test_dual_instance_transposes_dynamics(quad):
    dual = dual_observability_instance(quad)
    assert dual.subsystems[2].a_pattern == quad.subsystems[2].a_pattern.transpose()
    assert dual.subsystems[0].b_pattern == quad.subsystems[0].b_pattern
    # Neighbor arrows reverse: 0->2 becomes 2->0.
    assert 0 in dual.neighbors[2]
    assert 2 not in dual.neighbors[0]


def test_dual_is_involution(quad):
    cand = quad.candidate_edges()
    weights = {e.key(): 1.0 + i * 0.5 for i, e in enumerate(cand)}
    inst = make_weighted(quad, weights)
    assert dual_observability_instance(dual_observability_instance(inst)) == inst


def test_dual_swaps_candidate_edge_direction(quad):
    dual = dual_observability_instance(quad)
    keys = {e.key() for e in dual.candidate_edges()}
    assert keys == {(j, p, i, q) for (i, q, j, p) in
                    (e.key() for e in quad.candidate_edges())}


# ---------------------------------------------------------------- mode union

def test_union_instance_requires_modes(quad):
    with pytest.raises(NoModes):
        union_instance(quad)


def test_union_instance_merges_modes(quad):
    inst = CompositeInstance(
        subsystems=quad.subsystems,
        neighbors={i: list(n) for i, n in enumerate(quad.neighbors)},
        modes=[{0: [2], 2: [1, 3]}, {1: [0], 2: [1, 3]}],
    )
    u = union_instance(inst)
    assert u.instance.modes is None
    assert {e.key() for e in u.instance.candidate_edges()} == \
        {e.key() for e in quad.candidate_edges()}
    assert u.mode_sets[(0, 2)] == (0,)
    assert u.mode_sets[(1, 0)] == (1,)
    assert u.mode_sets[(2, 1)] == (0, 1)
    assert u.mode_sets[(2, 3)] == (0, 1)


def test_union_single_mode_covers_everything(quad):
    inst = CompositeInstance(
        subsystems=quad.subsystems,
        neighbors={i: list(n) for i, n in enumerate(quad.neighbors)},
        modes=[{i: list(n) for i, n in enumerate(quad.neighbors)}],
    )
    u = union_instance(inst)
    assert set(u.mode_sets) == {(0, 2), (1, 0), (2, 1), (2, 3)}
    assert all(ms == (0,) for ms in u.mode_sets.values())


# ---------------------------------------------------- randomized consistency

@st.composite
def random_patterns(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.integers(0, 2))
    a_entries = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n))
    b_entries = []
    if m:
        b_entries = draw(st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, m - 1)), max_size=n * m))
    return SparsityPattern(n, n, a_entries), SparsityPattern(n, m, b_entries)


@settings(max_examples=100, deadline=None)
@given(random_patterns())
def test_controllability_report_is_consistent(ab):
    a, b = ab
    r = check_structural_controllability(a, b)
    assert r.controllable == (r.accessible and r.dilation_free)
    assert r.dilation_free == (r.matching_size == a.rows)
    assert r.accessible == (not r.inaccessible_states)
    assert 0 <= r.matching_size <= a.rows
