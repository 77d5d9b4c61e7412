# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels; same API as ``pluennecke._pure``.

Both entry points release the GIL for their main loop, so callers may run
several of them concurrently from threads.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport free, malloc


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount_row(const uint64_t* row, Py_ssize_t words) noexcept nogil:
    cdef int total = 0
    cdef Py_ssize_t w
    for w in range(words):
        total += __builtin_popcountll(row[w])
    return total


cdef inline bint _better(int64_t cnt, int64_t card, uint64_t mask,
                         int64_t bcnt, int64_t bcard, uint64_t bmask) noexcept nogil:
    cdef int64_t lhs, rhs
    cdef uint64_t diff
    if bcard == 0:
        return True
    lhs = cnt * bcard
    rhs = bcnt * card
    if lhs != rhs:
        return lhs < rhs
    if card != bcard:
        return card < bcard
    diff = mask ^ bmask
    if diff == 0:
        return False
    return (mask & (diff & (~diff + 1))) != 0


def _pack(masks, Py_ssize_t width):
    cdef Py_ssize_t words = max(1, (width + 63) // 64)
    out = np.zeros((max(1, len(masks)), words), dtype=np.uint64)
    for r, m in enumerate(masks):
        m = int(m)
        for w in range(words):
            out[r, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def min_ratio_subset(masks, Py_ssize_t width, fixed=0, int free_bits=-1):
    """Minimise ``|union of masks over Z| / |Z|``; see ``_pure.min_ratio_subset``."""
    cdef Py_ssize_t n = len(masks)
    if free_bits < 0:
        free_bits = n
    if n > 62 or free_bits > 62:
        raise ValueError("subset kernel supports at most 62 indices")
    cdef uint64_t fixed_mask = <uint64_t>int(fixed)
    packed = _pack(masks, width)
    cdef uint64_t[:, ::1] img = packed
    cdef Py_ssize_t words = img.shape[1]
    acc_arr = np.zeros((free_bits + 1, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] acc = acc_arr
    cdef Py_ssize_t j, w, t
    cdef int fixed_card = __builtin_popcountll(fixed_mask)
    cdef uint64_t f = fixed_mask
    while f:
        j = __builtin_ctzll(f)
        for t in range(free_bits + 1):
            for w in range(words):
                acc[t, w] |= img[j, w]
        f &= f - 1

    cdef uint64_t m, start, stop, full
    cdef int64_t cnt, card
    cdef int64_t bcnt = 0, bcard = 0
    cdef uint64_t bmask = 0
    start = 0 if fixed_mask else 1
    stop = (<uint64_t>1) << free_bits
    with nogil:
        m = start
        while m < stop:
            if m:
                t = __builtin_ctzll(m)
                for w in range(words):
                    acc[t, w] = acc[t + 1, w] | img[t, w]
                for j in range(t):
                    for w in range(words):
                        acc[j, w] = acc[t, w]
            cnt = _popcount_row(&acc[0, 0], words)
            card = __builtin_popcountll(m) + fixed_card
            full = fixed_mask | m
            if _better(cnt, card, full, bcnt, bcard, bmask):
                bcnt = cnt
                bcard = card
                bmask = full
            m += 1
    return int(bcnt), int(bcard), int(bmask)


cdef struct _HK:
    int32_t n_left
    const int32_t* indptr
    const int32_t* indices
    int32_t* match_l
    int32_t* match_r
    int32_t* dist
    int32_t* queue
    int32_t* cursor


cdef bint _bfs(_HK* s) noexcept nogil:
    cdef int32_t inf = s.n_left + 1
    cdef int32_t head = 0, tail = 0, u, v, w, e
    cdef bint found = False
    for u in range(s.n_left):
        if s.match_l[u] < 0:
            s.dist[u] = 0
            s.queue[tail] = u
            tail += 1
        else:
            s.dist[u] = inf
    while head < tail:
        u = s.queue[head]
        head += 1
        for e in range(s.indptr[u], s.indptr[u + 1]):
            v = s.indices[e]
            w = s.match_r[v]
            if w < 0:
                found = True
            elif s.dist[w] == inf:
                s.dist[w] = s.dist[u] + 1
                s.queue[tail] = w
                tail += 1
    return found


cdef bint _dfs(_HK* s, int32_t u) noexcept nogil:
    cdef int32_t e, v, w
    while s.cursor[u] < s.indptr[u + 1]:
        e = s.cursor[u]
        s.cursor[u] += 1
        v = s.indices[e]
        w = s.match_r[v]
        if w < 0 or (s.dist[w] == s.dist[u] + 1 and _dfs(s, w)):
            s.match_l[u] = v
            s.match_r[v] = u
            return True
    s.dist[u] = s.n_left + 1
    return False


def max_matching(adj, Py_ssize_t n_right):
    """Hopcroft-Karp maximum matching; returns the right partner of each left vertex or -1."""
    cdef Py_ssize_t n_left = len(adj)
    if n_left == 0:
        return []
    cdef Py_ssize_t n_edges = 0
    for a in adj:
        n_edges += len(a)
    # one block: indptr, indices, match_l, match_r, dist, queue, cursor
    cdef Py_ssize_t total = (n_left + 1) + max(1, n_edges) + 4 * n_left + max(1, n_right)
    cdef int32_t* buf = <int32_t*>malloc(total * sizeof(int32_t))
    if buf == NULL:
        raise MemoryError()
    cdef _HK s
    cdef int32_t u, e, v
    cdef Py_ssize_t i, pos = 0
    cdef int32_t* indptr = buf
    cdef int32_t* indices = buf + n_left + 1
    try:
        s.n_left = <int32_t>n_left
        s.indptr = indptr
        s.indices = indices
        s.match_l = indices + max(1, n_edges)
        s.dist = s.match_l + n_left
        s.queue = s.dist + n_left
        s.cursor = s.queue + n_left
        s.match_r = s.cursor + n_left
        indptr[0] = 0
        for i in range(n_left):
            for v in adj[i]:
                indices[pos] = v
                pos += 1
            indptr[i + 1] = <int32_t>pos
            s.match_l[i] = -1
        for i in range(n_right):
            s.match_r[i] = -1
        with nogil:
            for u in range(s.n_left):
                for e in range(s.indptr[u], s.indptr[u + 1]):
                    v = s.indices[e]
                    if s.match_r[v] < 0:
                        s.match_l[u] = v
                        s.match_r[v] = u
                        break
            while _bfs(&s):
                for u in range(s.n_left):
                    s.cursor[u] = s.indptr[u]
                for u in range(s.n_left):
                    if s.match_l[u] < 0:
                        _dfs(&s, u)
        return [s.match_l[i] for i in range(n_left)]
    finally:
        free(buf)
