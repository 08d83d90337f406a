"""Structured-system model: patterns, subsystems, composite instances.

A *sparsity pattern* records where a matrix may hold a free nonzero entry.
A *subsystem* is a pair of patterns (state matrix, input matrix).  A
*composite instance* is a list of subsystems plus a neighbor map saying which
subsystem may feed state information to which; designing concrete
state-to-state interconnection edges subject to that map is the job of
:mod:`ctrltopo.design`.

Orientation convention (used consistently across the package and the file
format): ``j in neighbors[i]`` means subsystem ``i`` may *send* state
information to subsystem ``j``, i.e. candidate edges run from states of
``S_i`` into states of ``S_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import graphs
from .errors import InadmissibleEdge, NoModes

__all__ = [
    "SparsityPattern",
    "Subsystem",
    "InterconnectionEdge",
    "CompositeInstance",
    "ControllabilityReport",
    "UnionInstance",
    "assemble_composite",
    "check_structural_controllability",
    "dual_observability_instance",
    "union_instance",
]


@dataclass(frozen=True)
class SparsityPattern:
    """An ``rows x cols`` zero/nonzero pattern; ``nonzeros`` are (row, col)."""

    rows: int
    cols: int
    nonzeros: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.rows < 1:
            raise ValueError("pattern must have at least one row")
        if self.cols < 0:
            raise ValueError("column count must be >= 0")
        object.__setattr__(self, "nonzeros", frozenset((int(r), int(c)) for r, c in self.nonzeros))
        for r, c in self.nonzeros:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"nonzero ({r}, {c}) outside a {self.rows}x{self.cols} pattern")

    def transpose(self) -> "SparsityPattern":
        if self.cols == 0:
            raise ValueError("cannot transpose a pattern with zero columns into a pattern with zero rows")
        return SparsityPattern(self.cols, self.rows, frozenset((c, r) for r, c in self.nonzeros))

    def density(self) -> float:
        cells = self.rows * self.cols
        return len(self.nonzeros) / cells if cells else 0.0


@dataclass(frozen=True)
class Subsystem:
    """One subsystem: an ``n x n`` state pattern and an ``n x m`` input pattern."""

    index: int
    a_pattern: SparsityPattern
    b_pattern: SparsityPattern

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("subsystem index must be >= 0")
        n = self.a_pattern.rows
        if self.a_pattern.cols != n:
            raise ValueError("state pattern must be square")
        if self.b_pattern.rows != n:
            raise ValueError("input pattern must have one row per state")

    @property
    def state_dim(self) -> int:
        return self.a_pattern.rows

    @property
    def input_dim(self) -> int:
        return self.b_pattern.cols


@dataclass(frozen=True)
class InterconnectionEdge:
    """A directed state-to-state edge between two subsystems.

    The edge carries the value of state ``src_state`` of ``src_subsystem``
    into the dynamics of state ``dst_state`` of ``dst_subsystem``.  ``mode``
    is only set on results of switched design, naming the operating mode the
    edge is attributed to.
    """

    src_subsystem: int
    src_state: int
    dst_subsystem: int
    dst_state: int
    mode: int | None = None

    def key(self) -> tuple[int, int, int, int]:
        """Sort/identity key ignoring the mode attribution."""
        return (self.src_subsystem, self.src_state, self.dst_subsystem, self.dst_state)

    def with_mode(self, mode: int | None) -> "InterconnectionEdge":
        return InterconnectionEdge(self.src_subsystem, self.src_state,
                                   self.dst_subsystem, self.dst_state, mode)


def _as_neighbor_map(neighbors, k: int) -> tuple[tuple[int, ...], ...]:
    """Normalize {src: targets} (or a per-subsystem sequence) into a tuple."""
    if not isinstance(neighbors, Mapping):
        neighbors = dict(enumerate(neighbors))
    out: list[tuple[int, ...]] = [() for _ in range(k)]
    for i, targets in dict(neighbors).items():
        i = int(i)
        if not (0 <= i < k):
            raise ValueError(f"neighbor map names unknown subsystem {i}")
        tset = sorted({int(j) for j in targets})
        for j in tset:
            if not (0 <= j < k):
                raise ValueError(f"neighbor map names unknown subsystem {j}")
            if j == i:
                raise ValueError(f"subsystem {i} cannot neighbor itself")
        out[i] = tuple(tset)
    return tuple(out)


class CompositeInstance:
    """A design problem: subsystems, a neighbor map, optional costs and modes.

    ``weights``, when given, must assign one positive finite cost to *every*
    candidate edge induced by the neighbor map and to nothing else.  When
    ``modes`` is given, the flat neighbor map must equal the union of the
    per-mode maps.
    """

    __slots__ = ("subsystems", "neighbors", "weights", "modes",
                 "state_offsets", "input_offsets", "total_states", "total_inputs",
                 "_candidates")

    def __init__(self, subsystems: Sequence[Subsystem],
                 neighbors: Mapping[int, Iterable[int]],
                 weights: Mapping[tuple[int, int, int, int], float] | None = None,
                 modes: Sequence[Mapping[int, Iterable[int]]] | None = None):
        subsystems = tuple(subsystems)
        if not subsystems:
            raise ValueError("an instance needs at least one subsystem")
        for pos, sub in enumerate(subsystems):
            if sub.index != pos:
                raise ValueError(f"subsystem at position {pos} carries index {sub.index}")
        self.subsystems = subsystems
        k = len(subsystems)
        self.neighbors = _as_neighbor_map(neighbors, k)

        if modes is not None:
            mode_maps = tuple(_as_neighbor_map(m, k) for m in modes)
            if not mode_maps:
                raise ValueError("modes, when given, must be non-empty")
            union = tuple(tuple(sorted(set().union(*(m[i] for m in mode_maps))))
                          for i in range(k))
            if union != self.neighbors:
                raise ValueError("flat neighbor map must equal the union of the mode maps")
            self.modes = mode_maps
        else:
            self.modes = None
        self._candidates = None

        offsets = [0]
        for sub in subsystems:
            offsets.append(offsets[-1] + sub.state_dim)
        self.state_offsets = tuple(offsets[:-1])
        self.total_states = offsets[-1]
        ioffsets = [0]
        for sub in subsystems:
            ioffsets.append(ioffsets[-1] + sub.input_dim)
        self.input_offsets = tuple(ioffsets[:-1])
        self.total_inputs = ioffsets[-1]

        if weights is not None:
            wmap = {}
            for key, cost in dict(weights).items():
                i, q, j, p = (int(x) for x in key)
                cost = float(cost)
                if not (cost > 0.0) or cost != cost or cost == float("inf"):
                    raise ValueError(f"cost for edge {key} must be positive and finite")
                wmap[(i, q, j, p)] = cost
            expected = {e.key() for e in self.candidate_edges()}
            if set(wmap) != expected:
                missing = expected - set(wmap)
                extra = set(wmap) - expected
                raise ValueError(
                    "weights must cover exactly the candidate edges "
                    f"({len(missing)} missing, {len(extra)} spurious)")
            self.weights = wmap
        else:
            self.weights = None

    @property
    def subsystem_count(self) -> int:
        return len(self.subsystems)

    def global_state(self, subsystem: int, state: int) -> int:
        if not 0 <= subsystem < len(self.subsystems):
            raise ValueError(f"subsystem index {subsystem} out of range")
        if not 0 <= state < self.subsystems[subsystem].state_dim:
            raise ValueError(
                f"state {state} out of range for subsystem {subsystem}")
        return self.state_offsets[subsystem] + state

    def locate_state(self, global_index: int) -> tuple[int, int]:
        """Inverse of :meth:`global_state`."""
        if 0 <= global_index < self.total_states:
            for i in range(len(self.subsystems) - 1, -1, -1):
                if global_index >= self.state_offsets[i]:
                    return i, global_index - self.state_offsets[i]
        raise ValueError(f"global state {global_index} out of range")

    def candidate_edges(self) -> tuple[InterconnectionEdge, ...]:
        """All admissible edges, in (src_sub, src_state, dst_sub, dst_state) order."""
        if self._candidates is None:
            out = []
            for i in range(len(self.subsystems)):
                for q in range(self.subsystems[i].state_dim):
                    for j in self.neighbors[i]:
                        for p in range(self.subsystems[j].state_dim):
                            out.append(InterconnectionEdge(i, q, j, p))
            self._candidates = tuple(out)
        return self._candidates

    def edge_cost(self, edge: InterconnectionEdge) -> float:
        """The design cost of a candidate edge: its weight, or 1 when unweighted."""
        if self.weights is None:
            return 1.0
        return self.weights[edge.key()]

    def admits(self, edge: InterconnectionEdge) -> bool:
        if not (0 <= edge.src_subsystem < len(self.subsystems)
                and 0 <= edge.dst_subsystem < len(self.subsystems)):
            return False
        if not (0 <= edge.src_state < self.subsystems[edge.src_subsystem].state_dim
                and 0 <= edge.dst_state < self.subsystems[edge.dst_subsystem].state_dim):
            return False
        if edge.mode is not None:
            if self.modes is None:
                raise ValueError("edge carries a mode but the instance has none")
            if not 0 <= edge.mode < len(self.modes):
                raise ValueError(f"mode index {edge.mode} out of range")
            return edge.dst_subsystem in self.modes[edge.mode][edge.src_subsystem]
        return edge.dst_subsystem in self.neighbors[edge.src_subsystem]

    def __eq__(self, other):
        return (isinstance(other, CompositeInstance)
                and self.subsystems == other.subsystems
                and self.neighbors == other.neighbors
                and self.weights == other.weights
                and self.modes == other.modes)

    def __repr__(self):
        return (f"CompositeInstance(k={len(self.subsystems)}, "
                f"states={self.total_states}, inputs={self.total_inputs})")


@dataclass(frozen=True)
class ControllabilityReport:
    """Outcome of the two-part structural controllability test."""

    accessible: bool
    inaccessible_states: tuple[tuple[int, int], ...]
    matching_size: int
    dilation_free: bool
    controllable: bool


@dataclass(frozen=True)
class UnionInstance:
    """A flattened switched instance plus, per neighbor pair, its admitting modes."""

    instance: CompositeInstance
    mode_sets: Mapping[tuple[int, int], tuple[int, ...]]


def assemble_composite(inst: CompositeInstance,
                       edges: Iterable[InterconnectionEdge]
                       ) -> tuple[SparsityPattern, SparsityPattern]:
    """Patterns of the interconnected composite system.

    The state pattern is block-diagonal in the subsystem patterns with one
    extra nonzero per interconnection edge; the input pattern is block
    diagonal.  Raises :class:`InadmissibleEdge` on any edge not permitted by
    the neighbor map (or, for mode-tagged edges, by that mode's map).
    """
    n = inst.total_states
    m = inst.total_inputs
    a_nz = set()
    b_nz = set()
    for sub in inst.subsystems:
        soff = inst.state_offsets[sub.index]
        ioff = inst.input_offsets[sub.index]
        for r, c in sub.a_pattern.nonzeros:
            a_nz.add((soff + r, soff + c))
        for r, c in sub.b_pattern.nonzeros:
            b_nz.add((soff + r, ioff + c))
    for edge in edges:
        if not inst.admits(edge):
            raise InadmissibleEdge(f"edge {edge} is not admissible for this instance")
        row = inst.global_state(edge.dst_subsystem, edge.dst_state)
        col = inst.global_state(edge.src_subsystem, edge.src_state)
        a_nz.add((row, col))
    return (SparsityPattern(n, n, frozenset(a_nz)),
            SparsityPattern(n, m, frozenset(b_nz)))


def check_structural_controllability(a: SparsityPattern, b: SparsityPattern,
                                     state_dims: Sequence[int] | None = None
                                     ) -> ControllabilityReport:
    """Generic-rank controllability test on a pattern pair.

    The pair is structurally controllable iff (1) every state is reachable
    from some input in the directed graph whose edges follow the nonzeros,
    and (2) the bipartite row/column graph of ``[A B]`` has a matching
    saturating all rows, i.e. no dilation.  Both conditions are decided
    exactly on the patterns.

    ``state_dims``, when given, maps global state indices back to
    (subsystem, local state) pairs in the report; otherwise states are
    reported under subsystem 0.
    """
    n = a.rows
    if a.cols != n:
        raise ValueError("state pattern must be square")
    if b.rows != n:
        raise ValueError("input pattern must have one row per state")
    m = b.cols

    dedges = [(c, r) for r, c in a.nonzeros]
    dedges += [(n + c, r) for r, c in b.nonzeros]
    digraph = graphs.DiGraph(n + m, dedges)
    reached = graphs.reachable_from(digraph, range(n, n + m)) if m else set()
    inaccessible = sorted(v for v in range(n) if v not in reached)

    bedges = [(r, c) for r, c in a.nonzeros]
    bedges += [(r, n + c) for r, c in b.nonzeros]
    matching = graphs.max_bipartite_matching(graphs.BipartiteGraph(n, n + m, bedges))

    if state_dims is not None:
        if sum(state_dims) != n:
            raise ValueError("state_dims must sum to the state count")
        offsets = []
        acc = 0
        for d in state_dims:
            offsets.append(acc)
            acc += d
        def label(v):
            for i in range(len(offsets) - 1, -1, -1):
                if v >= offsets[i]:
                    return (i, v - offsets[i])
            raise AssertionError
    else:
        def label(v):
            return (0, v)

    accessible = not inaccessible
    dilation_free = matching.size == n
    return ControllabilityReport(
        accessible=accessible,
        inaccessible_states=tuple(label(v) for v in inaccessible),
        matching_size=matching.size,
        dilation_free=dilation_free,
        controllable=accessible and dilation_free,
    )


def dual_observability_instance(inst: CompositeInstance) -> CompositeInstance:
    """The sensing dual: transposed state patterns, reversed neighbor map.

    Observability design for the original instance is controllability design
    for the dual (the input patterns are reinterpreted as transposed sensing
    patterns), and applying the operation twice returns the original
    instance.
    """
    k = len(inst.subsystems)
    subs = tuple(
        Subsystem(index=s.index, a_pattern=s.a_pattern.transpose(), b_pattern=s.b_pattern)
        for s in inst.subsystems)
    neighbors = {i: frozenset(j for j in range(k) if i in inst.neighbors[j]) for i in range(k)}
    weights = None
    if inst.weights is not None:
        weights = {(j, p, i, q): c for (i, q, j, p), c in inst.weights.items()}
    modes = None
    if inst.modes is not None:
        modes = tuple(
            {i: frozenset(j for j in range(k) if i in mode[j]) for i in range(k)}
            for mode in inst.modes)
    return CompositeInstance(subs, neighbors, weights=weights, modes=modes)


def union_instance(inst: CompositeInstance) -> UnionInstance:
    """Flatten a switched instance into a single-mode one.

    The returned instance carries the union neighbor map (equal, by the
    instance invariant, to the flat map) and no modes; ``mode_sets`` records,
    for each directed neighbor pair, the sorted list of mode indices that
    admit it.  Raises :class:`NoModes` when the instance has no modes.
    """
    if inst.modes is None:
        raise NoModes("instance has no modes to flatten")
    k = len(inst.subsystems)
    mode_sets: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(k):
        for j in sorted(inst.neighbors[i]):
            admitting = tuple(mi for mi, mode in enumerate(inst.modes) if j in mode[i])
            mode_sets[(i, j)] = admitting
    flat = CompositeInstance(inst.subsystems, inst.neighbors, weights=inst.weights, modes=None)
    return UnionInstance(instance=flat, mode_sets=mode_sets)
