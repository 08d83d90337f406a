# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels.

Typed transliteration of :mod:`ctrltopo._pure`; both modules expose the same
five functions with identical outputs, including every tie-break.  See the
pure module for the algorithm commentary — the logic here mirrors it line by
line, with Python lists replaced by C arrays and ``heapq`` by inline binary
heaps using the same comparison order.
"""

from cpython cimport array
from libc.stdlib cimport qsort

import array as _array

cdef double INF = float("inf")


cdef int _cmp_ll(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*> a)[0]
    cdef long long y = (<const long long*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0

cdef array.array _INT = _array.array("i", [])
cdef array.array _DBL = _array.array("d", [])
cdef array.array _LL = _array.array("q", [])


cdef inline array.array _ints(Py_ssize_t size):
    return array.clone(_INT, size, zero=False)


cdef inline array.array _dbls(Py_ssize_t size):
    return array.clone(_DBL, size, zero=False)


# --------------------------------------------------------------- int heap

cdef inline void _hpush(int* h, int* hn, int val) noexcept nogil:
    cdef int i = hn[0]
    cdef int p, tmp
    h[i] = val
    hn[0] = i + 1
    while i > 0:
        p = (i - 1) >> 1
        if h[p] <= h[i]:
            break
        tmp = h[p]; h[p] = h[i]; h[i] = tmp
        i = p


cdef inline int _hpop(int* h, int* hn) noexcept nogil:
    cdef int res = h[0]
    cdef int n = hn[0] - 1
    cdef int i = 0
    cdef int c, tmp
    hn[0] = n
    h[0] = h[n]
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and h[c + 1] < h[c]:
            c += 1
        if h[i] <= h[c]:
            break
        tmp = h[i]; h[i] = h[c]; h[c] = tmp
        i = c
    return res


# ------------------------------------------------- (distance, vertex) heap

cdef inline bint _pless(double d1, int r1, double d2, int r2) noexcept nogil:
    return d1 < d2 or (d1 == d2 and r1 < r2)


cdef inline void _phpush(double* hd, int* hr, int* hn, double d, int r) noexcept nogil:
    cdef int i = hn[0]
    cdef int p, tr
    cdef double td
    hd[i] = d
    hr[i] = r
    hn[0] = i + 1
    while i > 0:
        p = (i - 1) >> 1
        if not _pless(hd[i], hr[i], hd[p], hr[p]):
            break
        td = hd[p]; hd[p] = hd[i]; hd[i] = td
        tr = hr[p]; hr[p] = hr[i]; hr[i] = tr
        i = p


cdef inline void _phpop(double* hd, int* hr, int* hn, double* dout, int* rout) noexcept nogil:
    cdef int n = hn[0] - 1
    cdef int i = 0
    cdef int c, tr
    cdef double td
    dout[0] = hd[0]
    rout[0] = hr[0]
    hn[0] = n
    hd[0] = hd[n]
    hr[0] = hr[n]
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and _pless(hd[c + 1], hr[c + 1], hd[c], hr[c]):
            c += 1
        if not _pless(hd[c], hr[c], hd[i], hr[i]):
            break
        td = hd[i]; hd[i] = hd[c]; hd[c] = td
        tr = hr[i]; hr[i] = hr[c]; hr[c] = tr
        i = c


# ----------------------------------------------------------------- kernels

def scc_labels(int n, indptr, heads):
    """Strongly connected components with a canonical topological numbering."""
    if n == 0:
        return [], 0
    cdef array.array a_ip = _array.array("i", indptr)
    cdef array.array a_hd = _array.array("i", heads)
    cdef int* ip = a_ip.data.as_ints
    cdef int* hd = a_hd.data.as_ints
    cdef Py_ssize_t E = len(a_hd)

    cdef array.array a_index = _ints(n)
    cdef array.array a_low = _ints(n)
    cdef array.array a_on = _ints(n)
    cdef array.array a_tstack = _ints(n)
    cdef array.array a_comp = _ints(n)
    cdef array.array a_wv = _ints(n + 1)
    cdef array.array a_we = _ints(n + 1)
    cdef int* index = a_index.data.as_ints
    cdef int* low = a_low.data.as_ints
    cdef int* on_stack = a_on.data.as_ints
    cdef int* tstack = a_tstack.data.as_ints
    cdef int* comp_raw = a_comp.data.as_ints
    cdef int* wv = a_wv.data.as_ints
    cdef int* we = a_we.data.as_ints

    cdef int v, w, u, ei, pv, start
    cdef int tt = 0, wt, ncomp = 0, counter = 0
    for v in range(n):
        index[v] = -1
        on_stack[v] = 0
        comp_raw[v] = -1

    for start in range(n):
        if index[start] != -1:
            continue
        index[start] = counter
        low[start] = counter
        counter += 1
        tstack[tt] = start
        tt += 1
        on_stack[start] = 1
        wv[0] = start
        we[0] = ip[start]
        wt = 1
        while wt > 0:
            v = wv[wt - 1]
            ei = we[wt - 1]
            if ei < ip[v + 1]:
                we[wt - 1] = ei + 1
                w = hd[ei]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    tstack[tt] = w
                    tt += 1
                    on_stack[w] = 1
                    wv[wt] = w
                    we[wt] = ip[w]
                    wt += 1
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                wt -= 1
                if wt > 0:
                    pv = wv[wt - 1]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
                if low[v] == index[v]:
                    while True:
                        tt -= 1
                        u = tstack[tt]
                        on_stack[u] = 0
                        comp_raw[u] = ncomp
                        if u == v:
                            break
                    ncomp += 1

    # Canonical renumbering: Kahn over the condensation, always taking the
    # ready component whose smallest original vertex is smallest.
    cdef array.array a_minv = _ints(ncomp)
    cdef int* min_vertex = a_minv.data.as_ints
    cdef int c
    for c in range(ncomp):
        min_vertex[c] = n
    for v in range(n):
        c = comp_raw[v]
        if v < min_vertex[c]:
            min_vertex[c] = v

    # condensation edges, deduplicated, sorted by (source comp, dest comp)
    cdef array.array a_pairs = array.clone(_LL, E if E > 0 else 1, zero=False)
    cdef long long* pairs = a_pairs.data.as_longlongs
    cdef Py_ssize_t np = 0, i
    cdef int cs, cd
    for v in range(n):
        for i in range(ip[v], ip[v + 1]):
            cs = comp_raw[v]
            cd = comp_raw[hd[i]]
            if cs != cd:
                pairs[np] = (<long long> cs) * ncomp + cd
                np += 1
    if np > 1:
        qsort(pairs, np, sizeof(long long), _cmp_ll)
    cdef Py_ssize_t nd = 0
    cdef long long prev = -1
    for i in range(np):
        if pairs[i] != prev:
            prev = pairs[i]
            pairs[nd] = prev
            nd += 1

    cdef array.array a_indeg = _ints(ncomp)
    cdef array.array a_cptr = _ints(ncomp + 1)
    cdef array.array a_cheads = _ints(nd if nd > 0 else 1)
    cdef int* indeg = a_indeg.data.as_ints
    cdef int* cptr = a_cptr.data.as_ints
    cdef int* cheads = a_cheads.data.as_ints
    for c in range(ncomp):
        indeg[c] = 0
        cptr[c] = 0
    cptr[ncomp] = 0
    for i in range(nd):
        cs = <int> (pairs[i] // ncomp)
        cd = <int> (pairs[i] % ncomp)
        indeg[cd] += 1
        cptr[cs + 1] += 1
    for c in range(ncomp):
        cptr[c + 1] += cptr[c]
    for i in range(nd):
        cheads[i] = <int> (pairs[i] % ncomp)

    cdef array.array a_heap = _ints(ncomp + 1)
    cdef array.array a_order = _ints(ncomp)
    cdef int* heap = a_heap.data.as_ints
    cdef int* order = a_order.data.as_ints
    cdef int hn = 0, nid = 0, d
    for c in range(ncomp):
        order[c] = -1
        if indeg[c] == 0:
            _hpush(heap, &hn, min_vertex[c])
    while hn > 0:
        # the heap holds smallest-member vertices; map back to the component
        c = comp_raw[_hpop(heap, &hn)]
        order[c] = nid
        nid += 1
        for i in range(cptr[c], cptr[c + 1]):
            d = cheads[i]
            indeg[d] -= 1
            if indeg[d] == 0:
                _hpush(heap, &hn, min_vertex[d])
    return [order[comp_raw[v]] for v in range(n)], ncomp


def reachable(int n, indptr, heads, sources):
    """0/1 flags of vertices reachable from ``sources`` (sources included)."""
    if n == 0:
        return []
    cdef array.array a_ip = _array.array("i", indptr)
    cdef array.array a_hd = _array.array("i", heads)
    cdef int* ip = a_ip.data.as_ints
    cdef int* hd = a_hd.data.as_ints
    cdef array.array a_seen = _ints(n)
    cdef array.array a_stack = _ints(n)
    cdef int* seen = a_seen.data.as_ints
    cdef int* stack = a_stack.data.as_ints
    cdef int v, w, s
    cdef Py_ssize_t i
    cdef int top = 0
    for v in range(n):
        seen[v] = 0
    for s in sources:
        if not seen[s]:
            seen[s] = 1
            stack[top] = s
            top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        for i in range(ip[v], ip[v + 1]):
            w = hd[i]
            if not seen[w]:
                seen[w] = 1
                stack[top] = w
                top += 1
    return a_seen.tolist()


def max_matching(int nl, int nr, indptr, heads):
    """Maximum-cardinality bipartite matching (augmenting paths, Kuhn)."""
    if nl == 0:
        return []
    cdef array.array a_ip = _array.array("i", indptr)
    cdef array.array a_hd = _array.array("i", heads)
    cdef int* ip = a_ip.data.as_ints
    cdef int* hd = a_hd.data.as_ints
    cdef array.array a_ml = _ints(nl)
    cdef array.array a_mr = _ints(nr if nr > 0 else 1)
    cdef array.array a_vis = _ints(nr if nr > 0 else 1)
    cdef int* ml = a_ml.data.as_ints
    cdef int* mr = a_mr.data.as_ints
    cdef int* visited = a_vis.data.as_ints
    cdef int cap = nl + nr + 2
    cdef array.array a_sl = _ints(cap)
    cdef array.array a_se = _ints(cap)
    cdef array.array a_sr = _ints(cap)
    cdef int* st_l = a_sl.data.as_ints
    cdef int* st_e = a_se.data.as_ints
    cdef int* st_r = a_sr.data.as_ints

    cdef int l, r, s, stamp = 0, top, success
    cdef Py_ssize_t i
    cdef bint pushed
    for l in range(nl):
        ml[l] = -1
    for r in range(nr):
        mr[r] = -1
        visited[r] = 0
    for l in range(nl):
        for i in range(ip[l], ip[l + 1]):
            r = hd[i]
            if mr[r] == -1:
                ml[l] = r
                mr[r] = l
                break
    for s in range(nl):
        if ml[s] != -1:
            continue
        stamp += 1
        # Iterative alternating DFS; frames are (left, edge cursor, entry right).
        st_l[0] = s
        st_e[0] = ip[s]
        st_r[0] = -1
        top = 1
        success = -1
        while top > 0:
            l = st_l[top - 1]
            pushed = False
            while st_e[top - 1] < ip[l + 1]:
                r = hd[st_e[top - 1]]
                st_e[top - 1] += 1
                if visited[r] == stamp:
                    continue
                visited[r] = stamp
                if mr[r] == -1:
                    success = r
                    break
                st_l[top] = mr[r]
                st_e[top] = ip[mr[r]]
                st_r[top] = r
                top += 1
                pushed = True
                break
            if success != -1:
                r = success
                while top > 0:
                    top -= 1
                    ml[st_l[top]] = r
                    mr[r] = st_l[top]
                    r = st_r[top]
                break
            if not pushed:
                top -= 1
    return a_ml.tolist()


def mwpm_lex(int nl, int nr, indptr, heads, weights):
    """Minimum-weight left-perfect matching, lexicographically smallest."""
    if nl == 0:
        return []
    cdef array.array a_ip = _array.array("i", indptr)
    cdef array.array a_hd = _array.array("i", heads)
    cdef array.array a_w = _array.array("d", weights)
    cdef int* ip = a_ip.data.as_ints
    cdef int* hd = a_hd.data.as_ints
    cdef double* wt = a_w.data.as_doubles
    cdef Py_ssize_t E = len(a_hd)

    cdef array.array a_ml = _ints(nl)
    cdef array.array a_mr = _ints(nr)
    cdef array.array a_u = _dbls(nl)
    cdef array.array a_v = _dbls(nr)
    cdef array.array a_dist = _dbls(nr)
    cdef array.array a_prev = _ints(nr)
    cdef array.array a_done = _ints(nr)
    cdef int* ml = a_ml.data.as_ints
    cdef int* mr = a_mr.data.as_ints
    cdef double* u = a_u.data.as_doubles
    cdef double* v = a_v.data.as_doubles
    cdef double* dist = a_dist.data.as_doubles
    cdef int* prev_l = a_prev.data.as_ints
    cdef int* done = a_done.data.as_ints

    cdef Py_ssize_t hcap = 2 * E + 4
    cdef array.array a_heapd = _dbls(hcap)
    cdef array.array a_heapr = _ints(hcap)
    cdef double* heap_d = a_heapd.data.as_doubles
    cdef int* heap_r = a_heapr.data.as_ints
    cdef int hn

    cdef int s, r, l, l2, r2, found, prior
    cdef Py_ssize_t i
    cdef double nd, dtmp, final, delta

    for l in range(nl):
        ml[l] = -1
        u[l] = 0.0
    for r in range(nr):
        mr[r] = -1
        v[r] = 0.0

    for s in range(nl):
        for r in range(nr):
            dist[r] = INF
            prev_l[r] = -1
            done[r] = 0
        hn = 0
        for i in range(ip[s], ip[s + 1]):
            r = hd[i]
            nd = wt[i] - u[s] - v[r]
            if nd < dist[r]:
                dist[r] = nd
                prev_l[r] = s
                _phpush(heap_d, heap_r, &hn, nd, r)
        found = -1
        final = 0.0
        while hn > 0:
            _phpop(heap_d, heap_r, &hn, &dtmp, &r)
            if done[r]:
                continue
            done[r] = 1
            if mr[r] == -1:
                found = r
                final = dtmp
                break
            l2 = mr[r]
            for i in range(ip[l2], ip[l2 + 1]):
                r2 = hd[i]
                if done[r2]:
                    continue
                nd = dtmp + wt[i] - u[l2] - v[r2]
                if nd < dist[r2]:
                    dist[r2] = nd
                    prev_l[r2] = l2
                    _phpush(heap_d, heap_r, &hn, nd, r2)
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
    cdef double maxw = 0.0
    for i in range(E):
        if wt[i] > maxw:
            maxw = wt[i]
    cdef double eps = 1e-9 * (1.0 + maxw)

    cdef array.array a_tptr = _ints(nl + 1)
    cdef array.array a_theads = _ints(E if E > 0 else 1)
    cdef int* tptr = a_tptr.data.as_ints
    cdef int* theads = a_theads.data.as_ints
    cdef Py_ssize_t nt = 0
    tptr[0] = 0
    for l in range(nl):
        for i in range(ip[l], ip[l + 1]):
            r = hd[i]
            if wt[i] - u[l] - v[r] <= eps:
                theads[nt] = r
                nt += 1
        tptr[l + 1] = <int> nt
    # transpose of the tight subgraph: rights -> lefts, lefts ascending
    cdef array.array a_rptr = _ints(nr + 1)
    cdef array.array a_rheads = _ints(nt if nt > 0 else 1)
    cdef array.array a_fill = _ints(nr if nr > 0 else 1)
    cdef int* rptr = a_rptr.data.as_ints
    cdef int* rheads = a_rheads.data.as_ints
    cdef int* fill = a_fill.data.as_ints
    for r in range(nr + 1):
        rptr[r] = 0
    for i in range(nt):
        rptr[theads[i] + 1] += 1
    for r in range(nr):
        rptr[r + 1] += rptr[r]
        fill[r] = rptr[r]
    for l in range(nl):
        for i in range(tptr[l], tptr[l + 1]):
            r = theads[i]
            rheads[fill[r]] = l
            fill[r] += 1

    cdef int hub = nr  # synthetic node: "release/claim an optional right"
    cdef array.array a_fixed = _ints(nl)
    cdef array.array a_inr = _ints(nr + 1)
    cdef array.array a_nh = _ints(nr + 1)
    cdef array.array a_queue = _ints(nr + 2)
    cdef int* fixed = a_fixed.data.as_ints
    cdef int* in_reach = a_inr.data.as_ints
    cdef int* next_hop = a_nh.data.as_ints
    cdef int* queue = a_queue.data.as_ints
    cdef int qlen, qi, y, x, l1, r_old, best, carrier, cur, occ
    for l in range(nl):
        fixed[l] = 0

    for l in range(nl):
        r_old = ml[l]
        for x in range(nr + 1):
            in_reach[x] = 0
            next_hop[x] = -1
        queue[0] = r_old
        in_reach[r_old] = 1
        qlen = 1
        qi = 0
        while qi < qlen:
            y = queue[qi]
            qi += 1
            if y == hub:
                # arcs r -> hub exist for every unmatched right r
                for r in range(nr):
                    if mr[r] == -1 and not in_reach[r]:
                        in_reach[r] = 1
                        next_hop[r] = hub
                        queue[qlen] = r
                        qlen += 1
                continue
            # displacement arcs x -> y: the occupant of x has a tight edge to y
            for i in range(rptr[y], rptr[y + 1]):
                l1 = rheads[i]
                if fixed[l1]:
                    continue
                x = ml[l1]
                if x != -1 and x != y and not in_reach[x]:
                    in_reach[x] = 1
                    next_hop[x] = y
                    queue[qlen] = x
                    qlen += 1
            # arc hub -> y: y may drop to unmatched only if its dual allows it
            if not in_reach[hub] and mr[y] != -1 and v[y] >= -eps:
                in_reach[hub] = 1
                next_hop[hub] = y
                queue[qlen] = hub
                qlen += 1

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
        fixed[l] = 1
    return a_ml.tolist()


cdef inline int _find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint _cle_value(int n, int root, int* esrc, int* edst, Py_ssize_t E,
                     double* rc, int* active, int* parent,
                     int* minw_choice_color, double* minw, int* cyc_buf,
                     int* path, double* total_out) noexcept nogil:
    """One Chu-Liu/Edmonds contraction pass over pre-initialised arrays.

    ``rc`` and ``active`` are mutated in place.  Scratch space is passed in
    so repeated calls allocate nothing.  Returns False when some vertex
    cannot be reached from the root, else True with the optimum weight in
    ``total_out``.
    """
    cdef int* choice = minw_choice_color
    cdef int* color = minw_choice_color + n
    cdef double total = 0.0
    cdef int rootc, s, d, c, cstart, k, plen, base
    cdef Py_ssize_t e, i
    cdef int ncyc_members, cyc_count

    while True:
        for c in range(n):
            minw[c] = INF
            choice[c] = -1
            color[c] = 0
        rootc = _find(parent, root)
        for e in range(E):
            if not active[e]:
                continue
            s = _find(parent, esrc[e])
            d = _find(parent, edst[e])
            if s == d:
                active[e] = 0
                continue
            if d != rootc and rc[e] < minw[d]:
                minw[d] = rc[e]
        for c in range(n):
            if _find(parent, c) != c or c == rootc:
                continue
            if minw[c] == INF:
                return False
            total += minw[c]
        for e in range(E):
            if not active[e]:
                continue
            d = _find(parent, edst[e])
            if d == rootc:
                continue
            rc[e] -= minw[d]
            if choice[d] == -1 and rc[e] <= 0.0:
                choice[d] = <int> e
        # walk chosen in-edges to find cycles; they are vertex-disjoint.
        # cyc_buf keeps members as runs [base, m1, ..., -1 sentinel].
        ncyc_members = 0
        cyc_count = 0
        for cstart in range(n):
            if _find(parent, cstart) != cstart or cstart == rootc or color[cstart] != 0:
                continue
            plen = 0
            c = cstart
            while True:
                if color[c] == 1:
                    k = plen - 1
                    while path[k] != c:
                        k -= 1
                    for i in range(k, plen):
                        cyc_buf[ncyc_members] = path[i]
                        ncyc_members += 1
                    cyc_buf[ncyc_members] = -1
                    ncyc_members += 1
                    cyc_count += 1
                    for i in range(plen):
                        color[path[i]] = 2
                    break
                if color[c] == 2 or c == rootc or choice[c] == -1:
                    for i in range(plen):
                        color[path[i]] = 2
                    break
                color[c] = 1
                path[plen] = c
                plen += 1
                c = _find(parent, esrc[choice[c]])
        if cyc_count == 0:
            total_out[0] = total
            return True
        i = 0
        while i < ncyc_members:
            base = cyc_buf[i]
            i += 1
            while cyc_buf[i] != -1:
                # union by direct re-rooting; path compression keeps it flat
                parent[_find(parent, cyc_buf[i])] = _find(parent, base)
                i += 1
            i += 1


def arborescence_lex(int n, int root, esrc, edst, ew):
    """Minimum spanning arborescence, lexicographically smallest edge list."""
    cdef Py_ssize_t E = len(esrc)
    cdef array.array a_src = _array.array("i", esrc) if E else _ints(1)
    cdef array.array a_dst = _array.array("i", edst) if E else _ints(1)
    cdef array.array a_w = _array.array("d", ew) if E else _dbls(1)
    cdef int* src = a_src.data.as_ints
    cdef int* dst = a_dst.data.as_ints
    cdef double* w = a_w.data.as_doubles

    cdef double maxw = 0.0, a
    cdef Py_ssize_t e, idx
    for e in range(E):
        a = w[e] if w[e] >= 0 else -w[e]
        if a > maxw:
            maxw = a
    cdef double eps = 1e-9 * (1.0 + maxw)

    cdef array.array a_rc0 = _dbls(E if E > 0 else 1)
    cdef array.array a_rc = _dbls(E if E > 0 else 1)
    cdef array.array a_active = _ints(E if E > 0 else 1)
    cdef array.array a_parent = _ints(n)
    cdef array.array a_scratch_i = _ints(2 * n)
    cdef array.array a_scratch_d = _dbls(n)
    cdef array.array a_cyc = _ints(2 * n + 2)
    cdef array.array a_path = _ints(n)
    cdef double* rc0 = a_rc0.data.as_doubles
    cdef double* rc = a_rc.data.as_doubles
    cdef int* active = a_active.data.as_ints
    cdef int* parent = a_parent.data.as_ints
    cdef int* scratch_i = a_scratch_i.data.as_ints
    cdef double* scratch_d = a_scratch_d.data.as_doubles
    cdef int* cyc = a_cyc.data.as_ints
    cdef int* path = a_path.data.as_ints

    cdef int c, b, bb, f
    cdef double base = 0.0, val = 0.0
    for e in range(E):
        rc0[e] = w[e]
        active[e] = dst[e] != root and src[e] != dst[e]
    for c in range(n):
        parent[c] = c
    if not _cle_value(n, root, src, dst, E, rc0, active, parent,
                      scratch_i, scratch_d, cyc, path, &base):
        return None

    cdef array.array a_forced = _ints(n)
    cdef int* forced = a_forced.data.as_ints
    for c in range(n):
        forced[c] = -1
    cdef int remaining = n - 1
    if remaining == 0:
        return a_forced.tolist()
    for idx in range(E):
        b = dst[idx]
        if b == root or src[idx] == b or forced[b] != -1:
            continue
        if rc0[idx] > eps:
            continue
        for e in range(E):
            bb = dst[e]
            if bb == root or src[e] == bb:
                active[e] = 0
                continue
            f = <int> idx if bb == b else forced[bb]
            active[e] = f == -1 or f == e
        for e in range(E):
            rc[e] = w[e]
        for c in range(n):
            parent[c] = c
        if _cle_value(n, root, src, dst, E, rc, active, parent,
                      scratch_i, scratch_d, cyc, path, &val) and val <= base + eps:
            forced[b] = <int> idx
            remaining -= 1
            if remaining == 0:
                break
    if remaining != 0:
        return None
    return a_forced.tolist()
