"""Deterministic instance generators.

``gen_reduction`` builds the three-state relay family that ties minimum
interconnection counts to Hamiltonian paths; ``gen_random`` draws seeded
random instances for stress and comparison testing.  Both are pure functions
of their arguments: the same call always returns an equal instance.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .model import CompositeInstance, SparsityPattern, Subsystem

__all__ = ["gen_reduction", "gen_random", "RELAY_PATTERN"]

#: Three-state relay used by :func:`gen_reduction`: a path 0 - 1 - 2 walked in
#: both directions, so each relay is one strongly connected component yet its
#: bipartite row graph leaves one row unmatched (max internal matching 2 of 3).
RELAY_PATTERN = SparsityPattern(3, 3, [(0, 1), (1, 0), (1, 2), (2, 1)])


def gen_reduction(vertex_count: int, edges: Iterable[tuple[int, int]],
                  leader: int = 0) -> CompositeInstance:
    """Relay composite for an undirected graph with one actuated leader.

    Every vertex becomes a three-state relay subsystem; the ``leader`` alone
    receives a single input feeding its state 0.  Each undirected edge
    ``{u, v}`` lets the two relays send to each other (both directions in the
    neighbor map).  The minimum number of interconnections that makes the
    composite controllable is ``vertex_count - 1`` exactly when the graph has
    a Hamiltonian path starting at the leader, which is what makes this
    family a hardness witness.

    The graph must be connected (otherwise the instance could never become
    controllable) and simple: self-loops and out-of-range endpoints are
    rejected.
    """
    r = int(vertex_count)
    if r < 1:
        raise ValueError("the graph needs at least one vertex")
    if not 0 <= leader < r:
        raise ValueError(f"leader {leader} out of range")
    undirected: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < r and 0 <= v < r):
            raise ValueError(f"edge ({u}, {v}) out of range")
        if u == v:
            raise ValueError(f"self-loop at vertex {u} not allowed")
        undirected.add((min(u, v), max(u, v)))

    seen = {leader}
    frontier = [leader]
    adj: dict[int, list[int]] = {v: [] for v in range(r)}
    for u, v in undirected:
        adj[u].append(v)
        adj[v].append(u)
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    if len(seen) != r:
        raise ValueError("the graph must be connected")

    subsystems = []
    for v in range(r):
        m = 1 if v == leader else 0
        b = SparsityPattern(3, m, [(0, 0)] if m else [])
        subsystems.append(Subsystem(index=v, a_pattern=RELAY_PATTERN, b_pattern=b))
    neighbors = {v: sorted(adj[v]) for v in range(r)}
    return CompositeInstance(subsystems=tuple(subsystems), neighbors=neighbors)


def gen_random(subsystem_count: int,
               state_range: tuple[int, int] = (1, 3),
               input_range: tuple[int, int] = (0, 1),
               density: float = 0.5,
               internal_density: float = 0.5,
               weights: bool = False,
               modes: int = 0,
               seed: int = 0) -> CompositeInstance:
    """Seeded random composite instance.

    ``density`` is the probability that an ordered subsystem pair (i, j)
    appears in the neighbor map; ``internal_density`` drives each subsystem's
    own pattern entries.  At least one subsystem always receives an input so
    the instance is never trivially hopeless.  With ``weights`` the candidate
    edges get costs drawn from {1, 2, 3, 4}; with ``modes`` > 0 the neighbor
    map is split across that many modes (every pair lands in at least one).
    Identical arguments produce identical instances.
    """
    k = int(subsystem_count)
    if k < 1:
        raise ValueError("need at least one subsystem")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)

    subsystems = []
    for i in range(k):
        n = rng.randint(*state_range)
        m = rng.randint(*input_range)
        a_entries = [(p, q) for p in range(n) for q in range(n)
                     if rng.random() < internal_density]
        b_entries = [(p, c) for p in range(n) for c in range(m)
                     if rng.random() < internal_density]
        subsystems.append(Subsystem(
            index=i,
            a_pattern=SparsityPattern(n, n, a_entries),
            b_pattern=SparsityPattern(n, m, b_entries)))

    if not any(s.b_pattern.nonzeros for s in subsystems):
        lucky = rng.randrange(k)
        old = subsystems[lucky]
        m = max(1, old.input_dim)
        subsystems[lucky] = Subsystem(
            index=lucky,
            a_pattern=old.a_pattern,
            b_pattern=SparsityPattern(old.state_dim, m, [(0, 0)]))

    neighbors: dict[int, list[int]] = {i: [] for i in range(k)}
    for i in range(k):
        for j in range(k):
            if i != j and rng.random() < density:
                neighbors[i].append(j)

    inst = CompositeInstance(subsystems=tuple(subsystems), neighbors=neighbors)

    weight_map = None
    if weights:
        weight_map = {e.key(): float(rng.randint(1, 4))
                      for e in inst.candidate_edges()}

    mode_maps = None
    if modes:
        mode_maps = [dict() for _ in range(modes)]
        for i in range(k):
            for j in neighbors[i]:
                carriers = [s for s in range(modes) if rng.random() < 0.5]
                if not carriers:
                    carriers = [rng.randrange(modes)]
                for s in carriers:
                    mode_maps[s].setdefault(i, []).append(j)

    if weight_map is None and mode_maps is None:
        return inst
    return CompositeInstance(subsystems=tuple(subsystems), neighbors=neighbors,
                             weights=weight_map, modes=mode_maps)


def path_edges(r: int) -> list[tuple[int, int]]:
    """Edges of the path graph 0 - 1 - ... - (r-1)."""
    return [(v, v + 1) for v in range(r - 1)]


def cycle_edges(r: int) -> list[tuple[int, int]]:
    """Edges of the cycle graph on r >= 3 vertices."""
    if r < 3:
        raise ValueError("a cycle needs at least three vertices")
    return path_edges(r) + [(r - 1, 0)]


def complete_edges(r: int) -> list[tuple[int, int]]:
    """Edges of the complete graph on r vertices."""
    return [(u, v) for u in range(r) for v in range(u + 1, r)]


def star_edges(leaves: int) -> list[tuple[int, int]]:
    """Edges of the star graph: vertex 0 joined to each of ``leaves`` leaves."""
    return [(0, v) for v in range(1, leaves + 1)]
