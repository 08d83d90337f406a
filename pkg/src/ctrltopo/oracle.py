"""Exhaustive and numeric validation oracles.

These deliberately share no code with the designer or the graph kernels: the
subset search runs on its own bitmask reachability and augmenting-path
matching, so an agreement between designer and oracle is evidence, not an
artifact of shared plumbing.

The exhaustive search enumerates admissible edge subsets in nondecreasing
cost — cardinality order (ties by lexicographic edge list) when the instance
has no weight map, summed-cost order otherwise — and returns the first
subset satisfying the target predicate.  Sound lower bounds prune subtrees
that provably cannot reach the predicate within the remaining budget; the
first subset found is therefore the same one an unpruned enumeration would
return.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, TooLarge
from .model import (
    CompositeInstance,
    InterconnectionEdge,
    SparsityPattern,
    check_structural_controllability,
)

__all__ = [
    "OracleResult",
    "NumericCheckResult",
    "exact_min_interconnections",
    "exact_min_for_matching",
    "exact_min_for_accessibility",
    "numeric_realization_check",
]

DEFAULT_CANDIDATE_CAP = 24
NUMERIC_STATE_CAP = 50


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exhaustive minimum search.

    ``optimum_cost``/``optimum_edges`` are None only in the budgeted decision
    form when no subset within budget exists (``decision`` False).
    ``explored`` counts the subsets whose predicate was actually evaluated;
    pruned subsets are not counted.
    """

    optimum_cost: float | None
    optimum_edges: tuple[InterconnectionEdge, ...] | None
    explored: int
    budget: float | None = None
    decision: bool | None = None


class _Tester:
    """Bitmask controllability predicates over one instance's candidates."""

    def __init__(self, inst: CompositeInstance):
        n = inst.total_states
        m = inst.total_inputs
        self.n = n
        self.full = (1 << n) - 1
        self.base_out = [0] * n
        self.base_row = [0] * n
        self.ncols = n + m
        seed = 0
        for sub in inst.subsystems:
            so = inst.state_offsets[sub.index]
            io = inst.input_offsets[sub.index]
            for r, c in sub.a_pattern.nonzeros:
                self.base_out[so + c] |= 1 << (so + r)
                self.base_row[so + r] |= 1 << (so + c)
            for r, c in sub.b_pattern.nonzeros:
                seed |= 1 << (so + r)
                self.base_row[so + r] |= 1 << (n + io + c)
        self.input_seed = seed
        self.edges = sorted(inst.candidate_edges(), key=InterconnectionEdge.key)
        self.src = [inst.global_state(e.src_subsystem, e.src_state) for e in self.edges]
        self.dst = [inst.global_state(e.dst_subsystem, e.dst_state) for e in self.edges]
        self.costs = [inst.edge_cost(e) for e in self.edges]
        self.dst_block = [e.dst_subsystem for e in self.edges]
        self.block_masks = []
        for sub in inst.subsystems:
            so = inst.state_offsets[sub.index]
            self.block_masks.append(((1 << sub.state_dim) - 1) << so)

        self.cur_out = list(self.base_out)
        self.cur_rows = list(self.base_row)
        self.cur_entered = [0] * len(inst.subsystems)
        self._undo: list[tuple[int, int, int, int]] = []

    def push_edge(self, ci) -> None:
        """Add one candidate edge to the incrementally maintained state."""
        s, d = self.src[ci], self.dst[ci]
        self._undo.append((s, d, self.cur_out[s], self.cur_rows[d]))
        self.cur_out[s] |= 1 << d
        self.cur_rows[d] |= 1 << s
        self.cur_entered[self.dst_block[ci]] += 1

    def pop_edge(self, ci) -> None:
        """Undo the most recent :meth:`push_edge`."""
        s, d, out_word, row_word = self._undo.pop()
        self.cur_out[s] = out_word
        self.cur_rows[d] = row_word
        self.cur_entered[self.dst_block[ci]] -= 1

    def _out_masks(self, subset):
        out = self.base_out
        if subset:
            out = out[:]
            for ci in subset:
                out[self.src[ci]] |= 1 << self.dst[ci]
        return out

    def _reach(self, subset):
        out = self._out_masks(subset)
        reach = self.input_seed
        frontier = reach
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= out[v]
            nxt &= ~reach
            reach |= nxt
            frontier = nxt
        return reach, out

    def accessible(self, subset) -> bool:
        reach, _ = self._reach(subset)
        return reach == self.full

    def deficiency(self, subset) -> int:
        """Rows left unmatched by a maximum matching of the [A B] row graph."""
        rows = self.base_row
        if subset:
            rows = rows[:]
            for ci in subset:
                rows[self.dst[ci]] |= 1 << self.src[ci]
        match_col = [-1] * self.ncols
        matched = 0
        for r in range(self.n):
            visited = [0]
            if self._augment(r, rows, match_col, visited):
                matched += 1
        return self.n - matched

    def _augment(self, r, rows, match_col, visited) -> bool:
        avail = rows[r] & ~visited[0]
        while avail:
            c = (avail & -avail).bit_length() - 1
            visited[0] |= 1 << c
            owner = match_col[c]
            if owner == -1 or self._augment(owner, rows, match_col, visited):
                match_col[c] = r
                return True
            avail = rows[r] & ~visited[0]
        return False

    def controllable(self, subset) -> bool:
        return self.accessible(subset) and self.deficiency(subset) == 0

    def access_bound(self, subset) -> int:
        """Sound lower bound on extra edges needed for full accessibility.

        Per subsystem block it charges the larger of two certain needs: an
        inaccessible state with no in-edge so far can only be reached through
        a new edge aimed directly at it; a block whose states are all
        inaccessible and that no chosen edge enters needs at least one new
        entering edge.  A new edge lands in exactly one block, so the
        per-block charges add up.
        """
        reach, out = self._reach(subset)
        if reach == self.full:
            return 0
        hit = 0
        for w in range(self.n):
            hit |= out[w]
        orphans = self.full & ~reach & ~hit
        entered = set()
        for ci in subset:
            entered.add(self.dst_block[ci])
        total = 0
        for b, mask in enumerate(self.block_masks):
            charge = bin(orphans & mask).count("1")
            if not charge and mask and not (reach & mask) and b not in entered:
                charge = 1
            total += charge
        return total if total > 0 else 1

    # Incremental variants reading the push_edge/pop_edge state.  They mirror
    # the subset-argument methods above exactly; the bound methods accept a
    # short-circuit limit so a pruning caller can stop paying for precision
    # once the answer is already over the line.

    def reach_cur(self) -> int:
        out = self.cur_out
        reach = self.input_seed
        frontier = reach
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= out[v]
            nxt &= ~reach
            reach |= nxt
            frontier = nxt
        return reach

    def access_bound_cur(self) -> int:
        reach = self.reach_cur()
        if reach == self.full:
            return 0
        out = self.cur_out
        hit = 0
        for w in range(self.n):
            hit |= out[w]
        orphans = self.full & ~reach & ~hit
        entered = self.cur_entered
        total = 0
        for b, mask in enumerate(self.block_masks):
            charge = bin(orphans & mask).count("1")
            if not charge and mask and not (reach & mask) and not entered[b]:
                charge = 1
            total += charge
        return total if total > 0 else 1

    def deficiency_cur(self) -> int:
        rows = self.cur_rows
        match_col = [-1] * self.ncols
        matched = 0
        for r in range(self.n):
            visited = [0]
            if self._augment(r, rows, match_col, visited):
                matched += 1
        return self.n - matched

    def full_bound_cur(self, limit: int) -> int:
        a = self.access_bound_cur()
        if a > limit:
            return a
        d = self.deficiency_cur()
        return d if d > a else a


def _uniform_search(tester, bound_cur, budget, unit):
    """Lexicographic cardinality-first DFS with sound prefix pruning.

    ``bound_cur(limit)`` reads the tester's incremental edge state and
    returns a lower bound on the edges still missing; a prefix is abandoned
    as soon as that bound exceeds the cards still available, and a full-size
    subset satisfies the predicate exactly when the bound reaches zero.
    """
    E = len(tester.edges)
    explored = 0
    max_card = E
    if budget is not None:
        max_card = min(E, int((budget + 1e-9) // unit))
    subset: list[int] = []

    def rec(start, c):
        nonlocal explored
        rem = c - len(subset)
        if rem == 0:
            explored += 1
            return bound_cur(0) == 0
        if bound_cur(rem) > rem:
            return False
        found = False
        for e in range(start, E - rem + 1):
            subset.append(e)
            tester.push_edge(e)
            found = rec(e + 1, c)
            tester.pop_edge(e)
            if found:
                return True
            subset.pop()
        return False

    for c in range(max_card + 1):
        subset.clear()
        if rec(0, c):
            return tuple(subset), float(c) * unit, explored
    return None, None, explored


def _weighted_search(tester, predicate, bound, budget):
    """Best-first enumeration by summed cost, ties by lexicographic edge list.

    Runs as an A* search: every entry carries an optimistic total
    cost + bound(subset) * cheapest_edge_cost, which never overestimates the
    cheapest satisfying superset.  Children inherit the parent's estimate
    until they are popped, at which point the real estimate is computed and
    stale entries are re-queued.  The first subset popped with bound 0 is
    therefore exactly the one the unpruned cost-ordered enumeration would
    return first, and with a budget the search stops as soon as every open
    entry is provably over budget.
    """
    E = len(tester.edges)
    costs = tester.costs
    min_cost = min(costs) if costs else 1.0
    explored = 0
    heap: list[tuple[float, float, tuple[int, ...]]] = [(0.0, 0.0, ())]
    while heap:
        est, cost, subset = heapq.heappop(heap)
        if budget is not None and est > budget + 1e-9:
            return None, None, explored
        need = bound(subset)
        true_est = cost + need * min_cost
        if true_est > est + 1e-12:
            heapq.heappush(heap, (true_est, cost, subset))
            continue
        explored += 1
        if need == 0:
            assert predicate(subset)
            return subset, cost, explored
        last = subset[-1] if subset else -1
        for e in range(last + 1, E):
            c = cost + costs[e]
            heapq.heappush(heap, (max(est, c), c, subset + (e,)))
    return None, None, explored


def _solve(inst, kind, budget, max_candidates):
    tester = _Tester(inst)
    E = len(tester.edges)
    if E > max_candidates:
        raise TooLarge(f"{E} candidate edges exceed the cap of {max_candidates}")

    if kind == "full":
        predicate = tester.controllable
        bound = lambda s: max(tester.deficiency(s), tester.access_bound(s))
        bound_cur = tester.full_bound_cur
    elif kind == "matching":
        predicate = lambda s: tester.deficiency(s) == 0
        bound = tester.deficiency
        bound_cur = lambda limit: tester.deficiency_cur()
    else:
        predicate = tester.accessible
        bound = tester.access_bound
        bound_cur = lambda limit: tester.access_bound_cur()

    everything = tuple(range(E))
    if not predicate(everything):
        raise Infeasible(f"no admissible edge subset satisfies the {kind} predicate")

    uniform = len(set(tester.costs)) <= 1
    if uniform:
        unit = tester.costs[0] if tester.costs else 1.0
        subset, cost, explored = _uniform_search(tester, bound_cur, budget, unit)
    else:
        subset, cost, explored = _weighted_search(tester, predicate, bound, budget)

    if subset is None:
        return OracleResult(optimum_cost=None, optimum_edges=None,
                            explored=explored, budget=budget, decision=False)
    edges = tuple(tester.edges[i] for i in subset)
    if inst.weights is None:
        cost = int(round(cost))
    return OracleResult(optimum_cost=cost, optimum_edges=edges, explored=explored,
                        budget=budget, decision=None if budget is None else True)


def exact_min_interconnections(inst: CompositeInstance, budget: float | None = None,
                               max_candidates: int = DEFAULT_CANDIDATE_CAP) -> OracleResult:
    """Exhaustive minimum edge set making the composite controllable.

    With ``budget`` set, answers the decision question "does a subset of cost
    at most budget exist?" and stops as soon as the answer is known.  Raises
    :class:`TooLarge` above the candidate cap and :class:`Infeasible` when
    even the full candidate set fails.
    """
    return _solve(inst, "full", budget, max_candidates)


def exact_min_for_matching(inst: CompositeInstance, budget: float | None = None,
                           max_candidates: int = DEFAULT_CANDIDATE_CAP) -> OracleResult:
    """Exhaustive minimum for the no-dilation condition alone."""
    return _solve(inst, "matching", budget, max_candidates)


def exact_min_for_accessibility(inst: CompositeInstance, budget: float | None = None,
                                max_candidates: int = DEFAULT_CANDIDATE_CAP) -> OracleResult:
    """Exhaustive minimum for the accessibility condition alone."""
    return _solve(inst, "accessibility", budget, max_candidates)


@dataclass(frozen=True)
class NumericCheckResult:
    """Outcome of random-realization rank testing.

    ``verdict`` is "controllable" when some trial reached full rank,
    "not-controllable" when trials failed and the structural test agrees the
    pattern is uncontrollable, and "inconclusive" when trials failed on a
    structurally controllable pattern (a numerically unlucky draw).
    """

    verdict: str
    best_rank: int
    state_count: int
    trials: int


def _rank(mat: np.ndarray) -> int:
    """Rank by Gaussian elimination with partial pivoting.

    A pivot counts when its magnitude exceeds 1e-9 relative to the largest
    entry of the original matrix.
    """
    work = np.array(mat, dtype=float, copy=True)
    rows, cols = work.shape
    if rows == 0 or cols == 0:
        return 0
    tol = 1e-9 * max(1.0, float(np.abs(work).max()))
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = rank + int(np.argmax(np.abs(work[rank:, c])))
        if abs(work[piv, c]) <= tol:
            continue
        if piv != rank:
            work[[rank, piv]] = work[[piv, rank]]
        factors = work[rank + 1:, c] / work[rank, c]
        work[rank + 1:] -= np.outer(factors, work[rank])
        rank += 1
    return rank


def numeric_realization_check(a: SparsityPattern, b: SparsityPattern,
                              trials: int = 3, seed: int = 0) -> NumericCheckResult:
    """Cross-validate the structural verdict with random numeric realizations.

    Each trial fills the nonzeros with independent uniform values in [1, 2]
    and computes the rank of the controllability matrix ``[B AB ... A^(n-1)B]``
    by elimination.  Any full-rank trial certifies controllability of the
    pattern (full generic rank); all-trials-short is only conclusive when the
    structural test rejects the pattern too.  This function never returns
    "controllable" on a structurally rejected pattern: a short-rank structure
    keeps every realization short-ranked.
    """
    n = a.rows
    if n > NUMERIC_STATE_CAP:
        raise TooLarge(f"{n} states exceed the numeric check cap of {NUMERIC_STATE_CAP}")
    if a.cols != n or b.rows != n:
        raise ValueError("pattern shapes are inconsistent")
    if trials < 1:
        raise ValueError("need at least one trial")
    m = b.cols
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(trials):
        A = np.zeros((n, n))
        for r, c in a.nonzeros:
            A[r, c] = rng.uniform(1.0, 2.0)
        B = np.zeros((n, m))
        for r, c in b.nonzeros:
            B[r, c] = rng.uniform(1.0, 2.0)
        blocks = [B]
        for _ in range(n - 1):
            blocks.append(A @ blocks[-1])
        rank = _rank(np.hstack(blocks)) if m else 0
        best = max(best, rank)
        if best == n:
            break
    if best == n:
        verdict = "controllable"
    else:
        report = check_structural_controllability(a, b)
        verdict = "inconclusive" if report.controllable else "not-controllable"
    return NumericCheckResult(verdict=verdict, best_rank=best, state_count=n, trials=trials)
