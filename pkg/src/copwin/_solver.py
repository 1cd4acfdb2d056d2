"""Compiled kernels for the pursuit-game fixpoint.

States are (cop multiset, robber vertex, side to move).  Cop multisets are
ranked in lexicographic order of their sorted tuples; the backward induction
runs as worklist propagation from capture/target states, with a counter of
unresolved successors per robber-turn state, so each state is processed at
most once per side.
"""

from __future__ import annotations

import numpy as np
from numba import njit

SIDE_COPS = 0
SIDE_ROBBER = 1

_DEBRUIJN = np.int64(0x03F79D71B4CB0A89)
_DEBRUIJN_IDX = np.zeros(64, np.int64)
for _i in range(64):
    _DEBRUIJN_IDX[((1 << _i) * 0x03F79D71B4CB0A89) % (1 << 64) >> 58] = _i
del _i


@njit(cache=True, inline="always")
def _lowbit_index(low):
    # index of an isolated set bit
    return _DEBRUIJN_IDX[(low * _DEBRUIJN) >> 58 & 63]


@njit(cache=True, inline="always")
def _pc32(x):
    # popcount for 0 <= x < 2**32 held in an int64
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return (x * 0x01010101) >> 24 & 0x3F


@njit(cache=True)
def multisets(n, k):
    """All nondecreasing k-tuples over 0..n-1, lexicographically ordered."""
    m = 1
    for i in range(k):
        m = m * (n + i) // (i + 1)
    out = np.empty((m, k), np.int64)
    idx = np.zeros(k, np.int64)
    for row in range(m):
        for j in range(k):
            out[row, j] = idx[j]
        j = k - 1
        while j >= 0 and idx[j] == n - 1:
            j -= 1
        if j < 0:
            break
        idx[j] += 1
        for l in range(j + 1, k):
            idx[l] = idx[j]
    return out


@njit(cache=True)
def solve(nbr, k, tgt_cop, tgt_rob):
    """Least fixpoint of cop-success over the game's state space.

    nbr: int64[n] open neighbourhood masks.
    tgt_cop/tgt_rob: int64 arrays of flattened state indices mi*n+r marked as
    success for the respective side to move (may be empty).

    Returns (win_cop, win_rob, placement_ok, pushes): per-side success tables
    over mi*n+r, whether some initial cop placement wins against every robber
    reply, and the number of worklist pushes (each state enters at most once
    per side).
    """
    n = nbr.shape[0]
    ms = multisets(n, k)
    m = ms.shape[0]

    closed = np.empty(n, np.int64)
    for v in range(n):
        closed[v] = nbr[v] | (np.int64(1) << v)

    # polynomial key -> multiset rank
    table_size = 1
    for _ in range(k):
        table_size *= n
    rank = np.full(table_size, -1, np.int64)
    for mi in range(m):
        key = np.int64(0)
        for j in range(k):
            key = key * n + ms[mi, j]
        rank[key] = mi

    occ = np.zeros(m, np.int64)
    for mi in range(m):
        o = np.int64(0)
        for j in range(k):
            o |= np.int64(1) << ms[mi, j]
        occ[mi] = o

    # per-vertex move options (stay + step)
    opt_ptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        opt_ptr[v + 1] = opt_ptr[v] + 1 + _pc32(nbr[v])
    opts = np.empty(opt_ptr[n], np.int64)
    for v in range(n):
        p = opt_ptr[v]
        opts[p] = v
        p += 1
        mm = nbr[v]
        while mm:
            low = mm & -mm
            opts[p] = _lowbit_index(low)
            p += 1
            mm ^= low

    # joint cop moves as a CSR multiset adjacency (two passes over the product)
    stamp = np.full(m, -1, np.int64)
    counts = np.zeros(m, np.int64)
    moved = np.empty(k, np.int64)
    choice = np.empty(k, np.int64)
    for mi in range(m):
        for j in range(k):
            choice[j] = 0
        while True:
            for j in range(k):
                moved[j] = opts[opt_ptr[ms[mi, j]] + choice[j]]
            for a in range(1, k):
                x = moved[a]
                b = a - 1
                while b >= 0 and moved[b] > x:
                    moved[b + 1] = moved[b]
                    b -= 1
                moved[b + 1] = x
            key = np.int64(0)
            for j in range(k):
                key = key * n + moved[j]
            t = rank[key]
            if stamp[t] != mi:
                stamp[t] = mi
                counts[mi] += 1
            j = k - 1
            while j >= 0:
                choice[j] += 1
                if choice[j] < opt_ptr[ms[mi, j] + 1] - opt_ptr[ms[mi, j]]:
                    break
                choice[j] = 0
                j -= 1
            if j < 0:
                break
    indptr = np.zeros(m + 1, np.int64)
    for mi in range(m):
        indptr[mi + 1] = indptr[mi] + counts[mi]
    data = np.empty(indptr[m], np.int64)
    fill = indptr.copy()
    stamp[:] = -1
    for mi in range(m):
        for j in range(k):
            choice[j] = 0
        while True:
            for j in range(k):
                moved[j] = opts[opt_ptr[ms[mi, j]] + choice[j]]
            for a in range(1, k):
                x = moved[a]
                b = a - 1
                while b >= 0 and moved[b] > x:
                    moved[b + 1] = moved[b]
                    b -= 1
                moved[b + 1] = x
            key = np.int64(0)
            for j in range(k):
                key = key * n + moved[j]
            t = rank[key]
            if stamp[t] != mi:
                stamp[t] = mi
                data[fill[mi]] = t
                fill[mi] += 1
            j = k - 1
            while j >= 0:
                choice[j] += 1
                if choice[j] < opt_ptr[ms[mi, j] + 1] - opt_ptr[ms[mi, j]]:
                    break
                choice[j] = 0
                j -= 1
            if j < 0:
                break

    total = m * n
    win_cop = np.zeros(total, np.uint8)
    win_rob = np.zeros(total, np.uint8)
    counter = np.zeros(total, np.int64)
    wl = np.empty(2 * total, np.int64)
    tail = 0

    for mi in range(m):
        o = occ[mi]
        base = mi * n
        for r in range(n):
            si = base + r
            if o >> r & 1:
                win_cop[si] = 1
                win_rob[si] = 1
                wl[tail] = si * 2 + SIDE_ROBBER
                tail += 1
            else:
                counter[si] = _pc32(closed[r] & ~o)
                if counter[si] == 0:
                    win_rob[si] = 1
                    wl[tail] = si * 2 + SIDE_ROBBER
                    tail += 1
    for t in range(tgt_cop.shape[0]):
        si = tgt_cop[t]
        if win_cop[si] == 0:
            win_cop[si] = 1
            wl[tail] = si * 2 + SIDE_COPS
            tail += 1
    for t in range(tgt_rob.shape[0]):
        si = tgt_rob[t]
        if win_rob[si] == 0:
            win_rob[si] = 1
            wl[tail] = si * 2 + SIDE_ROBBER
            tail += 1

    head = 0
    while head < tail:
        item = wl[head]
        head += 1
        side = item & 1
        si = item >> 1
        mi = si // n
        r = si - mi * n
        if side == SIDE_ROBBER:
            # cop-turn predecessors: any multiset one joint move away
            for p in range(indptr[mi], indptr[mi + 1]):
                sj = data[p] * n + r
                if win_cop[sj] == 0:
                    win_cop[sj] = 1
                    wl[tail] = sj * 2 + SIDE_COPS
                    tail += 1
        else:
            # robber-turn predecessors: robber one step away, not captured
            mm = closed[r] & ~occ[mi]
            base = mi * n
            while mm:
                low = mm & -mm
                r0 = _lowbit_index(low)
                mm ^= low
                sj = base + r0
                if win_rob[sj] == 0:
                    counter[sj] -= 1
                    if counter[sj] == 0:
                        win_rob[sj] = 1
                        wl[tail] = sj * 2 + SIDE_ROBBER
                        tail += 1

    placement_ok = False
    for mi in range(m):
        o = occ[mi]
        base = mi * n
        ok = True
        for r in range(n):
            if (o >> r & 1) == 0 and win_cop[base + r] == 0:
                ok = False
                break
        if ok:
            placement_ok = True
            break

    return win_cop, win_rob, placement_ok, tail


@njit(cache=True)
def dismantlable(nbr):
    """True iff repeated deletion of dominated vertices reaches one vertex."""
    n = nbr.shape[0]
    closed = np.empty(n, np.int64)
    for v in range(n):
        closed[v] = nbr[v] | (np.int64(1) << v)
    alive = (np.int64(1) << n) - 1
    count = n
    progress = True
    while count > 1 and progress:
        progress = False
        mx = alive
        while mx and not progress:
            lowx = mx & -mx
            x = _lowbit_index(lowx)
            mx ^= lowx
            cx = closed[x] & alive
            mu = alive ^ lowx
            while mu:
                lowu = mu & -mu
                u = _lowbit_index(lowu)
                mu ^= lowu
                if cx & ~(closed[u] & alive) == 0:
                    alive ^= lowx
                    count -= 1
                    progress = True
                    break
    return count == 1


@njit(cache=True)
def refine(adj, cells):
    """Equitable refinement of ordered cell masks; fragments sorted by count."""
    n = adj.shape[0]
    cur = np.empty(2 * n + 2, np.int64)
    ncur = cells.shape[0]
    for i in range(ncur):
        cur[i] = cells[i]
    work = np.empty(4 * n + 8, np.int64)
    wt = 0
    for i in range(ncur):
        work[wt] = cur[i]
        wt += 1
    wh = 0
    nxt = np.empty(2 * n + 2, np.int64)
    bucket = np.zeros(n + 1, np.int64)
    while wh < wt:
        s = work[wh]
        wh += 1
        nnxt = 0
        for ci in range(ncur):
            c = cur[ci]
            if c & (c - 1) == 0:
                nxt[nnxt] = c
                nnxt += 1
                continue
            mink = n + 1
            maxk = -1
            m = c
            while m:
                low = m & -m
                v = _lowbit_index(low)
                m ^= low
                k = _pc32(adj[v] & s)
                bucket[k] |= low
                if k < mink:
                    mink = k
                if k > maxk:
                    maxk = k
            if mink == maxk:
                bucket[mink] = 0
                nxt[nnxt] = c
                nnxt += 1
            else:
                for k in range(mink, maxk + 1):
                    bm = bucket[k]
                    if bm:
                        bucket[k] = 0
                        nxt[nnxt] = bm
                        nnxt += 1
                        work[wt] = bm
                        wt += 1
        tmp = cur
        cur = nxt
        nxt = tmp
        ncur = nnxt
    return cur[:ncur].copy()


@njit(cache=True)
def cut_vertices(adj):
    """Articulation-vertex mask of a connected graph (iterative Tarjan)."""
    n = adj.shape[0]
    if n <= 2:
        return np.int64(0)
    disc = np.full(n, -1, np.int64)
    low = np.empty(n, np.int64)
    parent = np.full(n, -1, np.int64)
    rem = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    cut = np.int64(0)
    disc[0] = 0
    low[0] = 0
    rem[0] = adj[0]
    stack[0] = 0
    sp = 0
    timer = 1
    root_children = 0
    while sp >= 0:
        v = stack[sp]
        m = rem[v]
        if m:
            lowb = m & -m
            u = _lowbit_index(lowb)
            rem[v] = m ^ lowb
            if u == parent[v]:
                continue
            if disc[u] < 0:
                parent[u] = v
                disc[u] = timer
                low[u] = timer
                timer += 1
                rem[u] = adj[u]
                if v == 0:
                    root_children += 1
                sp += 1
                stack[sp] = u
            else:
                if disc[u] < low[v]:
                    low[v] = disc[u]
        else:
            sp -= 1
            p = parent[v]
            if p >= 0:
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != 0 and low[v] >= disc[p]:
                    cut |= np.int64(1) << p
    if root_children > 1:
        cut |= np.int64(1)
    return cut


@njit(cache=True)
def leaf_certificate(adj, lab):
    """Relabelled neighbour masks for a labelling (position -> vertex)."""
    n = adj.shape[0]
    pos = np.empty(n, np.int64)
    for i in range(n):
        pos[lab[i]] = i
    out = np.empty(n, np.int64)
    for i in range(n):
        m = adj[lab[i]]
        c = np.int64(0)
        while m:
            lowb = m & -m
            c |= np.int64(1) << pos[_lowbit_index(lowb)]
            m ^= lowb
        out[i] = c
    return out


@njit(cache=True)
def check_child(adj_parent, s_mask, connected_only):
    """Canonical-deletion screen for parent + new vertex attached to s_mask.

    Returns 1 accept, 0 reject, 2 undecided (tied orbit, needs marked
    certificates).
    """
    np_old = adj_parent.shape[0]
    n = np_old + 1
    adj = np.empty(n, np.int64)
    wbit = np.int64(1) << np_old
    for v in range(np_old):
        if s_mask >> v & 1:
            adj[v] = adj_parent[v] | wbit
        else:
            adj[v] = adj_parent[v]
    adj[np_old] = s_mask
    full = (np.int64(1) << n) - 1
    cells0 = np.empty(1, np.int64)
    cells0[0] = full
    cells = refine(adj, cells0)
    pos = 0
    while cells[pos] & wbit == 0:
        pos += 1
    later = np.int64(0)
    for i in range(pos + 1, cells.shape[0]):
        later |= cells[i]
    peers = cells[pos] ^ wbit
    if later == 0 and peers == 0:
        return 1
    if connected_only:
        elig = ~cut_vertices(adj) & full
    else:
        elig = full
    if later & elig:
        return 0
    if peers & elig == 0:
        return 1
    return 2
