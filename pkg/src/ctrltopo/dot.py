"""Deterministic DOT renderings of an instance's three working graphs.

* ``digraph`` — the composite state digraph: one cluster per subsystem,
  input vertices, and any overlay interconnections drawn dashed.
* ``bipartite`` — the stage-1 row/column graph: internal pattern edges
  solid, candidate interconnections dotted, chosen ones highlighted.
* ``condensation`` — the stage-2 graph: per-subsystem strongly connected
  components N1, N2, ... plus the master input u; free intra-subsystem edges
  solid, paid inter-subsystem edges dashed, input edges bold, chosen paid
  edges highlighted.

Output is stable: same instance and overlay, same text.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .design import build_condensation, build_stage1_bipartite
from .model import CompositeInstance, InterconnectionEdge

__all__ = ["render_dot", "dot_digraph", "dot_bipartite", "dot_condensation", "VIEWS"]

HIGHLIGHT = "crimson"


def _state(i: int, q: int) -> str:
    return f"s{i}_{q}"


def _input(i: int, c: int) -> str:
    return f"u{i}_{c}"


def dot_digraph(inst: CompositeInstance,
                edges: Sequence[InterconnectionEdge] = ()) -> str:
    lines = ["digraph composite {", "  rankdir=LR;",
             '  node [shape=circle, fontsize=10];']
    for sub in inst.subsystems:
        i = sub.index
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="S{i}";')
        for q in range(sub.state_dim):
            lines.append(f'    {_state(i, q)} [label="x{i}.{q}"];')
        lines.append("  }")
        for c in range(sub.input_dim):
            lines.append(f'  {_input(i, c)} [label="u{i}.{c}", shape=box];')
    for sub in inst.subsystems:
        i = sub.index
        for r, c in sorted(sub.a_pattern.nonzeros):
            lines.append(f"  {_state(i, c)} -> {_state(i, r)};")
        for r, c in sorted(sub.b_pattern.nonzeros):
            lines.append(f"  {_input(i, c)} -> {_state(i, r)};")
    for e in sorted(edges, key=InterconnectionEdge.key):
        mode_label = f', label="m{e.mode}"' if e.mode is not None else ""
        lines.append(
            f"  {_state(e.src_subsystem, e.src_state)} -> "
            f"{_state(e.dst_subsystem, e.dst_state)} "
            f"[style=dashed, color={HIGHLIGHT}{mode_label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_bipartite(inst: CompositeInstance,
                  chosen: Sequence[InterconnectionEdge] = ()) -> str:
    s1 = build_stage1_bipartite(inst)
    n = inst.total_states
    chosen_pairs = set()
    for e in chosen:
        left = inst.global_state(e.dst_subsystem, e.dst_state)
        right = inst.global_state(e.src_subsystem, e.src_state)
        chosen_pairs.add((left, right))

    def right_name(r: int) -> tuple[str, str]:
        if r < n:
            i, q = inst.locate_state(r)
            return f"c{r}", f"x{i}.{q}"
        c = r - n
        for i in range(len(inst.subsystems) - 1, -1, -1):
            if c >= inst.input_offsets[i]:
                return f"c{r}", f"u{i}.{c - inst.input_offsets[i]}"
        raise AssertionError("unreachable")

    lines = ["graph stage1 {", "  rankdir=LR;", "  node [fontsize=10];"]
    lines.append("  subgraph rows {")
    lines.append("    rank=same;")
    for l in range(n):
        i, q = inst.locate_state(l)
        lines.append(f'    r{l} [label="row x{i}.{q}", shape=box];')
    lines.append("  }")
    lines.append("  subgraph cols {")
    lines.append("    rank=same;")
    for r in range(n + inst.total_inputs):
        name, label = right_name(r)
        lines.append(f'    {name} [label="{label}", shape=ellipse];')
    lines.append("  }")
    for l, r in sorted(s1.graph.edges):
        if (l, r) in s1.internal_edges:
            lines.append(f"  r{l} -- c{r};")
        elif (l, r) in chosen_pairs:
            lines.append(f"  r{l} -- c{r} [style=bold, color={HIGHLIGHT}];")
        else:
            lines.append(f"  r{l} -- c{r} [style=dotted, color=gray50];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_condensation(inst: CompositeInstance,
                     chosen: Sequence[InterconnectionEdge] = ()) -> str:
    cond = build_condensation(inst)
    comp_of_state: dict[tuple[int, int], int] = {}
    for idx, (sub, states) in enumerate(cond.scc_nodes):
        for q in states:
            comp_of_state[(sub, q)] = idx
    chosen_pairs = {
        (comp_of_state[(e.src_subsystem, e.src_state)],
         comp_of_state[(e.dst_subsystem, e.dst_state)])
        for e in chosen}

    lines = ["digraph condensation {", "  rankdir=LR;", "  node [fontsize=10];",
             '  u [label="u", shape=box];']
    for idx, (sub, states) in enumerate(cond.scc_nodes):
        members = ",".join(f"x{sub}.{q}" for q in states)
        lines.append(f'  N{idx + 1} [label="N{idx + 1} ({members})"];')
    for g, h in cond.e1:
        lines.append(f"  N{g + 1} -> N{h + 1};")
    for g, h in cond.e2:
        if (g, h) in chosen_pairs:
            lines.append(f"  N{g + 1} -> N{h + 1} "
                         f"[style=dashed, color={HIGHLIGHT}, penwidth=2];")
        else:
            lines.append(f"  N{g + 1} -> N{h + 1} [style=dashed, color=gray50];")
    for _, h in cond.e3:
        lines.append(f"  u -> N{h + 1} [style=bold];")
    lines.append("}")
    return "\n".join(lines) + "\n"


VIEWS = {
    "digraph": dot_digraph,
    "bipartite": dot_bipartite,
    "condensation": dot_condensation,
}


def render_dot(inst: CompositeInstance, view: str,
               edges: Iterable[InterconnectionEdge] = ()) -> str:
    """Render one of the named views; ``edges`` is the optional overlay."""
    try:
        fn = VIEWS[view]
    except KeyError:
        raise ValueError(f"unknown view {view!r}; choose from {sorted(VIEWS)}")
    return fn(inst, tuple(edges))
