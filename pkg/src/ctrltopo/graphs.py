"""Graph types and the graph algorithms the designer is built on.

Two graph containers (directed and bipartite), two result containers
(matching and arborescence), and five operations:

* :func:`scc` — strongly connected components, topologically ordered
* :func:`reachable_from` — forward reachability from a vertex set
* :func:`max_bipartite_matching` — maximum-cardinality matching
* :func:`min_weight_perfect_matching` — cheapest left-saturating matching,
  lexicographically smallest among optima
* :func:`min_spanning_arborescence` — cheapest spanning out-tree from a root,
  lexicographically smallest among optima

Determinism is part of the contract: equal inputs give identical outputs,
including the particular optimum returned when several are tied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from ._backend import active as _kernels
from .errors import NoPerfectMatching, NotSpannable

__all__ = [
    "DiGraph",
    "BipartiteGraph",
    "Matching",
    "Arborescence",
    "scc",
    "reachable_from",
    "max_bipartite_matching",
    "min_weight_perfect_matching",
    "min_spanning_arborescence",
]


def _normalize(edges, weights, check_vertex):
    """Sort, deduplicate and weight-check an edge collection.

    Parallel duplicates collapse to the cheapest weight.  Returns aligned
    tuples (edges, weights) sorted by (tail, head).
    """
    merged: dict[tuple[int, int], float] = {}
    for edge in edges:
        a, b = edge
        check_vertex(a, b)
        if weights is None:
            w = 0.0
        else:
            w = float(weights.get((a, b), 0.0)) if isinstance(weights, Mapping) else float(weights[(a, b)])
        if not math.isfinite(w) or w < 0.0:
            raise ValueError(f"edge ({a}, {b}) has invalid weight {w!r}; weights must be finite and >= 0")
        key = (a, b)
        if key not in merged or w < merged[key]:
            merged[key] = w
    ordered = sorted(merged)
    return tuple(ordered), tuple(merged[e] for e in ordered)


def _csr(count: int, edges, weights):
    indptr = [0] * (count + 1)
    for a, _ in edges:
        indptr[a + 1] += 1
    for i in range(count):
        indptr[i + 1] += indptr[i]
    heads = [b for _, b in edges]
    return indptr, heads, list(weights)


class DiGraph:
    """Immutable directed graph on vertices ``0..vertex_count-1``.

    ``weights`` maps edge pairs to finite non-negative reals; missing entries
    default to 0.  Parallel edges collapse to the cheaper one; self-loops are
    allowed.
    """

    __slots__ = ("vertex_count", "edges", "weights", "_indptr", "_heads", "_w")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]],
                 weights: Mapping[tuple[int, int], float] | None = None):
        if vertex_count < 0:
            raise ValueError("vertex_count must be >= 0")
        self.vertex_count = int(vertex_count)

        def check(a, b):
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) out of range for {self.vertex_count} vertices")

        self.edges, self.weights = _normalize(edges, weights, check)
        self._indptr, self._heads, self._w = _csr(self.vertex_count, self.edges, self.weights)

    def weight(self, edge: tuple[int, int]) -> float:
        try:
            return self.weights[self.edges.index(edge)]
        except ValueError:
            raise KeyError(edge) from None

    def __eq__(self, other):
        return (isinstance(other, DiGraph) and self.vertex_count == other.vertex_count
                and self.edges == other.edges and self.weights == other.weights)

    def __hash__(self):
        return hash((self.vertex_count, self.edges, self.weights))

    def __repr__(self):
        return f"DiGraph(vertex_count={self.vertex_count}, edges={len(self.edges)})"


class BipartiteGraph:
    """Immutable bipartite graph with ``left_count`` + ``right_count`` vertices.

    Edges are (left, right) pairs with optional finite non-negative weights.
    """

    __slots__ = ("left_count", "right_count", "edges", "weights", "_indptr", "_heads", "_w")

    def __init__(self, left_count: int, right_count: int, edges: Iterable[tuple[int, int]],
                 weights: Mapping[tuple[int, int], float] | None = None):
        if left_count < 0 or right_count < 0:
            raise ValueError("vertex counts must be >= 0")
        self.left_count = int(left_count)
        self.right_count = int(right_count)

        def check(l, r):
            if not (0 <= l < self.left_count and 0 <= r < self.right_count):
                raise ValueError(f"edge ({l}, {r}) out of range for "
                                 f"{self.left_count}x{self.right_count} bipartite graph")

        self.edges, self.weights = _normalize(edges, weights, check)
        self._indptr, self._heads, self._w = _csr(self.left_count, self.edges, self.weights)

    def weight(self, edge: tuple[int, int]) -> float:
        try:
            return self.weights[self.edges.index(edge)]
        except ValueError:
            raise KeyError(edge) from None

    def __eq__(self, other):
        return (isinstance(other, BipartiteGraph) and self.left_count == other.left_count
                and self.right_count == other.right_count and self.edges == other.edges
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.left_count, self.right_count, self.edges, self.weights))

    def __repr__(self):
        return (f"BipartiteGraph(left_count={self.left_count}, "
                f"right_count={self.right_count}, edges={len(self.edges)})")


@dataclass(frozen=True)
class Matching:
    """A bipartite matching as sorted (left, right) pairs plus its weight."""

    pairs: tuple[tuple[int, int], ...]
    total_weight: float

    def __post_init__(self):
        lefts = [l for l, _ in self.pairs]
        rights = [r for _, r in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("matching pairs must be vertex-disjoint")

    @property
    def size(self) -> int:
        return len(self.pairs)

    def right_of(self, left: int) -> int | None:
        for l, r in self.pairs:
            if l == left:
                return r
        return None


@dataclass(frozen=True)
class Arborescence:
    """A spanning out-tree: every non-root vertex has exactly one in-edge."""

    root: int
    edges: tuple[tuple[int, int], ...]
    total_weight: float


def scc(g: DiGraph) -> tuple[tuple[int, ...], ...]:
    """Strongly connected components, sources first.

    Returns a tuple of components (each a sorted tuple of vertex ids) in a
    canonical topological order of the condensation: every edge points from
    an earlier component to a later one, and simultaneously ready components
    are ordered by smallest member.  Output is a pure function of the graph.
    """
    labels, ncomp = _kernels.scc_labels(g.vertex_count, g._indptr, g._heads)
    comps: list[list[int]] = [[] for _ in range(ncomp)]
    for v in range(g.vertex_count):
        comps[labels[v]].append(v)
    return tuple(tuple(c) for c in comps)


def reachable_from(g: DiGraph, sources: Iterable[int]) -> set[int]:
    """Vertices reachable from any of ``sources`` (sources included)."""
    src = sorted(set(sources))
    for s in src:
        if not (0 <= s < g.vertex_count):
            raise ValueError(f"source {s} out of range")
    flags = _kernels.reachable(g.vertex_count, g._indptr, g._heads, src)
    return {v for v in range(g.vertex_count) if flags[v]}


def max_bipartite_matching(b: BipartiteGraph) -> Matching:
    """A maximum-cardinality matching.

    The cardinality is unique; the particular pairing is the deterministic
    one produced by augmenting lefts in increasing order.
    """
    ml = _kernels.max_matching(b.left_count, b.right_count, b._indptr, b._heads)
    pairs = tuple((l, ml[l]) for l in range(b.left_count) if ml[l] != -1)
    lookup = dict(zip(b.edges, b.weights))
    return Matching(pairs=pairs, total_weight=sum(lookup[p] for p in pairs))


def min_weight_perfect_matching(b: BipartiteGraph) -> Matching:
    """Cheapest matching saturating every left vertex.

    Requires ``left_count <= right_count``.  Among equally cheap optima the
    lexicographically smallest pair list is returned, so the result is a
    deterministic function of the graph.  Raises :class:`NoPerfectMatching`
    when no left-saturating matching exists.
    """
    if b.left_count > b.right_count:
        raise ValueError("min_weight_perfect_matching requires left_count <= right_count")
    ml = _kernels.mwpm_lex(b.left_count, b.right_count, b._indptr, b._heads, b._w)
    if ml is None:
        raise NoPerfectMatching(
            f"no matching saturates all {b.left_count} left vertices")
    pairs = tuple((l, ml[l]) for l in range(b.left_count))
    lookup = dict(zip(b.edges, b.weights))
    return Matching(pairs=pairs, total_weight=sum(lookup[p] for p in pairs))


def min_spanning_arborescence(g: DiGraph, root: int) -> Arborescence:
    """Cheapest spanning arborescence rooted at ``root``.

    Among equally cheap optima the lexicographically smallest sorted edge
    list is returned.  Raises :class:`NotSpannable` when some vertex cannot
    be reached from the root.
    """
    if not (0 <= root < g.vertex_count):
        raise ValueError(f"root {root} out of range")
    esrc = [a for a, _ in g.edges]
    edst = [b for _, b in g.edges]
    parent_edge = _kernels.arborescence_lex(g.vertex_count, root, esrc, edst, list(g.weights))
    if parent_edge is None:
        raise NotSpannable(f"not all vertices are reachable from root {root}")
    chosen = sorted(g.edges[e] for e in parent_edge if e != -1)
    total = sum(g.weights[e] for e in parent_edge if e != -1)
    return Arborescence(root=root, edges=tuple(chosen), total_weight=total)
