"""Pure-Python graph kernels.

This module and the compiled extension ``ctrltopo._speedups`` expose the same
five functions with identical outputs, including every tie-break, so the rest
of the package can use whichever is importable.  Inputs are flat CSR-style
adjacency lists prepared by :mod:`ctrltopo.graphs`; adjacency must be sorted
by head vertex within each tail, with parallel edges already collapsed.

All functions are pure: they never mutate their arguments and hold no state
between calls.
"""

from __future__ import annotations

import heapq

INF = float("inf")


def scc_labels(n: int, indptr, heads) -> tuple[list[int], int]:
    """Strongly connected components with a canonical topological numbering.

    Returns ``(labels, count)`` where ``labels[v]`` is the component id of
    vertex ``v``.  Ids are assigned so that every edge goes from a component
    to one with an equal or larger id (sources first), and ties between
    simultaneously ready components are broken by their smallest member
    vertex.  That makes the numbering a canonical function of the graph, not
    of traversal order.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    tarjan_stack: list[int] = []
    comp_raw = [-1] * n
    ncomp = 0
    counter = 0

    for start in range(n):
        if index[start] != -1:
            continue
        index[start] = low[start] = counter
        counter += 1
        tarjan_stack.append(start)
        on_stack[start] = True
        work = [(start, indptr[start])]
        while work:
            v, ei = work[-1]
            if ei < indptr[v + 1]:
                work[-1] = (v, ei + 1)
                w = heads[ei]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    tarjan_stack.append(w)
                    on_stack[w] = True
                    work.append((w, indptr[w]))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    pv = work[-1][0]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
                if low[v] == index[v]:
                    while True:
                        u = tarjan_stack.pop()
                        on_stack[u] = False
                        comp_raw[u] = ncomp
                        if u == v:
                            break
                    ncomp += 1

    # Canonical renumbering: Kahn's algorithm over the condensation, always
    # taking the ready component whose smallest original vertex is smallest.
    min_vertex = [n] * ncomp
    for v in range(n):
        c = comp_raw[v]
        if v < min_vertex[c]:
            min_vertex[c] = v
    pairs = []
    for v in range(n):
        for i in range(indptr[v], indptr[v + 1]):
            cs = comp_raw[v]
            cd = comp_raw[heads[i]]
            if cs != cd:
                pairs.append((cs, cd))
    pairs.sort()
    dedup = []
    prev = None
    for p in pairs:
        if p != prev:
            dedup.append(p)
            prev = p
    indeg = [0] * ncomp
    cptr = [0] * (ncomp + 1)
    for cs, cd in dedup:
        indeg[cd] += 1
        cptr[cs + 1] += 1
    for c in range(ncomp):
        cptr[c + 1] += cptr[c]
    cheads = [cd for _, cd in dedup]

    heap = [(min_vertex[c], c) for c in range(ncomp) if indeg[c] == 0]
    heapq.heapify(heap)
    order = [-1] * ncomp
    nid = 0
    while heap:
        _, c = heapq.heappop(heap)
        order[c] = nid
        nid += 1
        for i in range(cptr[c], cptr[c + 1]):
            d = cheads[i]
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (min_vertex[d], d))
    return [order[comp_raw[v]] for v in range(n)], ncomp


def reachable(n: int, indptr, heads, sources) -> list[int]:
    """0/1 flags of vertices reachable from ``sources`` (sources included)."""
    seen = [0] * n
    stack = []
    for s in sources:
        if not seen[s]:
            seen[s] = 1
            stack.append(s)
    while stack:
        v = stack.pop()
        for i in range(indptr[v], indptr[v + 1]):
            w = heads[i]
            if not seen[w]:
                seen[w] = 1
                stack.append(w)
    return seen


def max_matching(nl: int, nr: int, indptr, heads) -> list[int]:
    """Maximum-cardinality bipartite matching (augmenting paths, Kuhn).

    Returns ``match_l`` with ``match_l[l]`` the right partner of left ``l``
    or -1.  Deterministic: lefts are processed in order and adjacency is
    scanned in CSR order.
    """
    ml = [-1] * nl
    mr = [-1] * nr
    for l in range(nl):
        for i in range(indptr[l], indptr[l + 1]):
            r = heads[i]
            if mr[r] == -1:
                ml[l] = r
                mr[r] = l
                break
    visited = [0] * nr
    stamp = 0
    for s in range(nl):
        if ml[s] != -1:
            continue
        stamp += 1
        # Iterative alternating DFS; frames are [left, edge cursor, entry right].
        stack = [[s, indptr[s], -1]]
        success = -1
        while stack:
            frame = stack[-1]
            l = frame[0]
            pushed = False
            while frame[1] < indptr[l + 1]:
                r = heads[frame[1]]
                frame[1] += 1
                if visited[r] == stamp:
                    continue
                visited[r] = stamp
                if mr[r] == -1:
                    success = r
                    break
                stack.append([mr[r], indptr[mr[r]], r])
                pushed = True
                break
            if success != -1:
                r = success
                while stack:
                    fr = stack.pop()
                    ml[fr[0]] = r
                    mr[r] = fr[0]
                    r = fr[2]
                break
            if not pushed:
                stack.pop()
    return ml


def mwpm_lex(nl: int, nr: int, indptr, heads, weights) -> list[int] | None:
    """Minimum-weight left-perfect matching, lexicographically smallest.

    Phase 1 runs successive shortest augmenting paths with dual potentials
    (Dijkstra on reduced costs), which yields one optimal matching plus duals
    ``u``, ``v`` with every reduced cost non-negative, matched edges tight,
    and v <= 0 with v == 0 on unmatched rights.

    Phase 2 re-binds each left vertex in turn to the smallest right it can
    take while keeping total weight optimal.  By complementary slackness a
    left-perfect matching is optimal iff it uses only tight edges and still
    covers every right with v < 0, so candidate feasibility reduces to a
    reachability test in a residual graph over rights (can the displacement
    chain started by stealing candidate ``r`` terminate somewhere harmless?).
    One backward BFS from the vertex being vacated answers the test for all
    candidates of that left at once.

    Returns ``match_l`` or None when no left-perfect matching exists.
    Requires nl <= nr and non-negative weights.
    """
    if nl == 0:
        return []
    ml = [-1] * nl
    mr = [-1] * nr
    u = [0.0] * nl
    v = [0.0] * nr
    dist = [INF] * nr
    prev_l = [-1] * nr
    done = [False] * nr

    for s in range(nl):
        for r in range(nr):
            dist[r] = INF
            prev_l[r] = -1
            done[r] = False
        heap: list[tuple[float, int]] = []
        for i in range(indptr[s], indptr[s + 1]):
            r = heads[i]
            nd = weights[i] - u[s] - v[r]
            if nd < dist[r]:
                dist[r] = nd
                prev_l[r] = s
                heapq.heappush(heap, (nd, r))
        found = -1
        final = 0.0
        while heap:
            d, r = heapq.heappop(heap)
            if done[r]:
                continue
            done[r] = True
            if mr[r] == -1:
                found = r
                final = d
                break
            l2 = mr[r]
            for i in range(indptr[l2], indptr[l2 + 1]):
                r2 = heads[i]
                if done[r2]:
                    continue
                nd = d + weights[i] - u[l2] - v[r2]
                if nd < dist[r2]:
                    dist[r2] = nd
                    prev_l[r2] = l2
                    heapq.heappush(heap, (nd, r2))
        if found == -1:
            return None
        for r in range(nr):
            if done[r] and r != found:
                delta = dist[r] - final
                v[r] += delta
                u[mr[r]] -= delta
        u[s] += final
        r = found
        while r != -1:
            l = prev_l[r]
            prior = ml[l]
            ml[l] = r
            mr[r] = l
            r = prior

    # ---- phase 2: lexicographic refinement over the tight subgraph ----
    maxw = 0.0
    for w in weights:
        if w > maxw:
            maxw = w
    eps = 1e-9 * (1.0 + maxw)

    tptr = [0] * (nl + 1)
    theads: list[int] = []
    for l in range(nl):
        for i in range(indptr[l], indptr[l + 1]):
            r = heads[i]
            if weights[i] - u[l] - v[r] <= eps:
                theads.append(r)
        tptr[l + 1] = len(theads)
    # transpose of the tight subgraph: rights -> lefts, lefts ascending
    rcnt = [0] * nr
    for r in theads:
        rcnt[r] += 1
    rptr = [0] * (nr + 1)
    for r in range(nr):
        rptr[r + 1] = rptr[r] + rcnt[r]
    rheads = [0] * len(theads)
    fill = list(rptr[:nr])
    for l in range(nl):
        for i in range(tptr[l], tptr[l + 1]):
            r = theads[i]
            rheads[fill[r]] = l
            fill[r] += 1

    hub = nr  # synthetic node standing for "release/claim an optional right"
    fixed = [False] * nl
    in_reach = [False] * (nr + 1)
    next_hop = [-1] * (nr + 1)

    for l in range(nl):
        r_old = ml[l]
        for x in range(nr + 1):
            in_reach[x] = False
            next_hop[x] = -1
        queue = [r_old]
        in_reach[r_old] = True
        qi = 0
        while qi < len(queue):
            y = queue[qi]
            qi += 1
            if y == hub:
                # arcs r -> hub exist for every unmatched right r
                for r in range(nr):
                    if mr[r] == -1 and not in_reach[r]:
                        in_reach[r] = True
                        next_hop[r] = hub
                        queue.append(r)
                continue
            # displacement arcs x -> y: the occupant of x has a tight edge to y
            for i in range(rptr[y], rptr[y + 1]):
                l1 = rheads[i]
                if fixed[l1]:
                    continue
                x = ml[l1]
                if x != -1 and x != y and not in_reach[x]:
                    in_reach[x] = True
                    next_hop[x] = y
                    queue.append(x)
            # arc hub -> y: y may drop to unmatched only if its dual allows it
            if not in_reach[hub] and mr[y] != -1 and v[y] >= -eps:
                in_reach[hub] = True
                next_hop[hub] = y
                queue.append(hub)

        best = -1
        for i in range(tptr[l], tptr[l + 1]):
            r = theads[i]
            if r == r_old or in_reach[r]:
                best = r
                break
        # r_old is always tight and always reachable, so best is set.
        if best != r_old:
            ml[l] = -1
            mr[r_old] = -1
            carrier = l
            cur = best
            while True:
                if cur == hub:
                    r2 = next_hop[hub]
                    if r2 == r_old:
                        break  # r_old stays unmatched; its dual is ~0
                    occ = mr[r2]
                    mr[r2] = -1
                    ml[occ] = -1
                    carrier = occ
                    cur = next_hop[r2]
                    continue
                occ = mr[cur]
                mr[cur] = carrier
                ml[carrier] = cur
                if cur == r_old:
                    break
                if occ == -1:
                    carrier = -1
                    cur = next_hop[cur]  # an unmatched right always hops to hub
                else:
                    carrier = occ
                    cur = next_hop[cur]
        fixed[l] = True
    return ml


def _cle_value(n, root, esrc, edst, rc, active, parent):
    """One Chu-Liu/Edmonds contraction pass over pre-initialised arrays.

    ``rc`` and ``active`` are mutated in place (``rc`` accumulates the dual
    subtractions, so on exit it holds reduced costs frozen at the moment each
    edge became internal to a contraction).  Returns the optimum total weight
    or None when some vertex cannot be reached from the root.
    """
    E = len(esrc)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0.0
    minw = [0.0] * n
    choice = [-1] * n
    color = [0] * n
    while True:
        for c in range(n):
            minw[c] = INF
            choice[c] = -1
            color[c] = 0
        rootc = find(root)
        for e in range(E):
            if not active[e]:
                continue
            s = find(esrc[e])
            d = find(edst[e])
            if s == d:
                active[e] = False
                continue
            if d != rootc and rc[e] < minw[d]:
                minw[d] = rc[e]
        for c in range(n):
            if find(c) != c or c == rootc:
                continue
            if minw[c] == INF:
                return None
            total += minw[c]
        for e in range(E):
            if not active[e]:
                continue
            d = find(edst[e])
            if d == rootc:
                continue
            rc[e] -= minw[d]
            if choice[d] == -1 and rc[e] <= 0.0:
                choice[d] = e
        # walk chosen in-edges to find cycles; they are vertex-disjoint
        cycles = []
        for cstart in range(n):
            if find(cstart) != cstart or cstart == rootc or color[cstart] != 0:
                continue
            path = []
            c = cstart
            while True:
                if color[c] == 1:
                    k = len(path) - 1
                    while path[k] != c:
                        k -= 1
                    cycles.append(path[k:])
                    for node in path:
                        color[node] = 2
                    break
                if color[c] == 2 or c == rootc or choice[c] == -1:
                    for node in path:
                        color[node] = 2
                    break
                color[c] = 1
                path.append(c)
                c = find(esrc[choice[c]])
        if not cycles:
            return total
        for cyc in cycles:
            base = cyc[0]
            for c in cyc[1:]:
                # union by direct re-rooting; path compression keeps it flat
                parent[find(c)] = find(base)


def arborescence_lex(n, root, esrc, edst, ew) -> list[int] | None:
    """Minimum spanning arborescence with the lexicographically smallest
    edge list among optima.

    Edges must be pre-sorted by (src, dst) with parallels collapsed, so edge
    index order is lexicographic order.  Returns ``parent_edge`` mapping each
    non-root vertex to its in-edge index (root gets -1), or None when the
    graph is not spannable from ``root``.

    Strategy: solve once for the optimal value and reduced costs (any edge
    with positive reduced cost is in no optimum, by complementary slackness
    with the contraction duals); then scan edges in lexicographic order and
    force an edge whenever a constrained re-solve confirms the optimum is
    unchanged.  Forcing an edge means deleting every other in-edge of its
    head, so each accepted edge is the smallest usable one given all earlier
    commitments, which yields the lexicographically smallest optimal set.
    """
    E = len(esrc)
    maxw = 0.0
    for w in ew:
        a = w if w >= 0 else -w
        if a > maxw:
            maxw = a
    eps = 1e-9 * (1.0 + maxw)

    rc = [float(w) for w in ew]
    active = [False] * E
    for e in range(E):
        active[e] = edst[e] != root and esrc[e] != edst[e]
    base = _cle_value(n, root, esrc, edst, rc, active, list(range(n)))
    if base is None:
        return None

    forced = [-1] * n
    remaining = n - 1
    if remaining == 0:
        return forced
    for idx in range(E):
        b = edst[idx]
        if b == root or esrc[idx] == b or forced[b] != -1:
            continue
        if rc[idx] > eps:
            continue
        rc2 = [float(w) for w in ew]
        active2 = [False] * E
        for e in range(E):
            bb = edst[e]
            if bb == root or esrc[e] == bb:
                continue
            f = idx if bb == b else forced[bb]
            active2[e] = f == -1 or f == e
        val = _cle_value(n, root, esrc, edst, rc2, active2, list(range(n)))
        if val is not None and val <= base + eps:
            forced[b] = idx
            remaining -= 1
            if remaining == 0:
                break
    if remaining != 0:
        return None
    return forced
