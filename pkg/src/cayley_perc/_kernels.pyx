# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_fallback`` for the reference semantics."""
import numpy as np

from libc.stdint cimport int8_t, int16_t, int32_t, int64_t, uint64_t
from libc.stdlib cimport malloc, free

cdef enum:
    MAXN = 20


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z += 0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline bint _selected(uint64_t key, uint64_t threshold, bint select_all, int64_t r) noexcept nogil:
    if select_all:
        return True
    return _mix64(key ^ <uint64_t>r) < threshold


cdef void _fill_factorials(int n, int64_t* fact) noexcept nogil:
    cdef int k
    fact[0] = 1
    for k in range(1, n + 1):
        fact[k] = fact[k - 1] * k


cdef void _unrank(int n, int64_t r, const int64_t* fact, int8_t* x) noexcept nogil:
    cdef int i, j
    cdef int64_t c
    for i in range(n):
        c = r // fact[n - 1 - i]
        r = r % fact[n - 1 - i]
        x[i] = <int8_t>c
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            if x[j] >= x[i]:
                x[j] += 1


cdef void _lehmer(int n, const int8_t* x, int8_t* c) noexcept nogil:
    cdef int i, j, cnt
    for i in range(n):
        cnt = 0
        for j in range(i + 1, n):
            if x[j] < x[i]:
                cnt += 1
        c[i] = <int8_t>cnt


cdef inline int64_t _swap_rank(int n, int64_t r, const int8_t* x, const int8_t* c,
                               const int64_t* fact, int a, int b) noexcept nogil:
    """Rank of x with positions a < b swapped, from x's rank and Lehmer digits."""
    cdef int8_t u = x[a]
    cdef int8_t w = x[b]
    cdef int j, cnt
    cdef int64_t out = r
    cnt = 1 if u < w else 0
    for j in range(a + 1, n):
        if j != b and x[j] < w:
            cnt += 1
    out += (cnt - c[a]) * fact[n - 1 - a]
    for j in range(a + 1, b):
        out += ((1 if u < x[j] else 0) - (1 if w < x[j] else 0)) * fact[n - 1 - j]
    cnt = 0
    for j in range(b + 1, n):
        if x[j] < u:
            cnt += 1
    out += (cnt - c[b]) * fact[n - 1 - b]
    return out


cdef bint _next_permutation(int n, int8_t* x) noexcept nogil:
    cdef int i = n - 2
    cdef int j
    cdef int8_t t
    while i >= 0 and x[i] > x[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while x[j] < x[i]:
        j -= 1
    t = x[i]; x[i] = x[j]; x[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = x[i]; x[i] = x[j]; x[j] = t
        i += 1
        j -= 1
    return True


cdef inline int32_t _find(int32_t* parent, int32_t v) noexcept nogil:
    cdef int32_t root = v
    cdef int32_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        nxt = parent[v]
        parent[v] = root
        v = nxt
    return root


def mix64(uint64_t z):
    return _mix64(z)


def selection_mask(int64_t count, uint64_t key, object threshold, bint select_all):
    out = np.empty(count, dtype=bool)
    cdef unsigned char[::1] view = out.view(np.uint8)
    cdef uint64_t t = 0 if select_all else <uint64_t>threshold
    cdef int64_t r
    with nogil:
        for r in range(count):
            view[r] = _selected(key, t, select_all, r)
    return out


def neighbor_ranks(int n, gens, ranks):
    cdef int64_t[:, ::1] g = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 2)
    cdef int64_t[::1] rk = np.ascontiguousarray(ranks, dtype=np.int64).ravel()
    cdef int m = g.shape[0]
    result = np.empty((rk.shape[0], m), dtype=np.int64)
    cdef int64_t[:, ::1] out = result
    cdef int64_t fact[MAXN + 1]
    cdef int8_t x[MAXN]
    cdef int8_t c[MAXN]
    cdef Py_ssize_t k
    cdef int q
    _fill_factorials(n, fact)
    with nogil:
        for k in range(rk.shape[0]):
            _unrank(n, rk[k], fact, x)
            _lehmer(n, x, c)
            for q in range(m):
                out[k, q] = _swap_rank(n, rk[k], x, c, fact, <int>g[q, 0], <int>g[q, 1])
    return result


def percolate(int n, gens, uint64_t key, object threshold, bint select_all):
    cdef int64_t[:, ::1] g = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 2)
    cdef int m = g.shape[0]
    cdef int64_t fact[MAXN + 1]
    _fill_factorials(n, fact)
    cdef int64_t count = fact[n]
    cdef uint64_t t = 0 if select_all else <uint64_t>threshold

    labels_arr = np.empty(count, dtype=np.int32)
    cdef int32_t[::1] dense = labels_arr
    cdef int64_t r, nb
    cdef int32_t sel = 0

    with nogil:
        for r in range(count):
            if _selected(key, t, select_all, r):
                dense[r] = sel
                sel += 1
            else:
                dense[r] = -1
    if sel == 0:
        return labels_arr

    cdef int32_t* parent = <int32_t*>malloc(sel * sizeof(int32_t))
    cdef int32_t* size = <int32_t*>malloc(sel * sizeof(int32_t))
    if parent == NULL or size == NULL:
        free(parent)
        free(size)
        raise MemoryError()
    cdef int8_t x[MAXN]
    cdef int8_t c[MAXN]
    cdef int q, i
    cdef int32_t ra, rb, tmp, nxt
    try:
        with nogil:
            for i in range(sel):
                parent[i] = i
                size[i] = 1
            for i in range(n):
                x[i] = <int8_t>i
            r = 0
            while True:
                if dense[r] >= 0:
                    _lehmer(n, x, c)
                    for q in range(m):
                        nb = _swap_rank(n, r, x, c, fact, <int>g[q, 0], <int>g[q, 1])
                        if nb > r and dense[nb] >= 0:
                            ra = _find(parent, dense[r])
                            rb = _find(parent, dense[nb])
                            if ra != rb:
                                if size[ra] < size[rb]:
                                    tmp = ra; ra = rb; rb = tmp
                                parent[rb] = ra
                                size[ra] += size[rb]
                r += 1
                if not _next_permutation(n, x):
                    break
            # relabel: components numbered by smallest rank; reuse `size` as root -> label map
            for i in range(sel):
                size[i] = -1
            nxt = 0
            for r in range(count):
                if dense[r] >= 0:
                    ra = _find(parent, dense[r])
                    if size[ra] < 0:
                        size[ra] = nxt
                        nxt += 1
                    dense[r] = size[ra]
    finally:
        free(parent)
        free(size)
    return labels_arr


def bfs_distances(int n, gens, int64_t root):
    cdef int64_t[:, ::1] g = np.ascontiguousarray(gens, dtype=np.int64).reshape(-1, 2)
    cdef int m = g.shape[0]
    cdef int64_t fact[MAXN + 1]
    _fill_factorials(n, fact)
    cdef int64_t count = fact[n]
    dist_arr = np.full(count, -1, dtype=np.int16)
    queue_arr = np.empty(count, dtype=np.int64)
    cdef int16_t[::1] dist = dist_arr
    cdef int64_t[::1] queue = queue_arr
    cdef int8_t x[MAXN]
    cdef int8_t c[MAXN]
    cdef int64_t head = 0, tail = 0, r, nb
    cdef int q
    with nogil:
        dist[root] = 0
        queue[tail] = root
        tail += 1
        while head < tail:
            r = queue[head]
            head += 1
            _unrank(n, r, fact, x)
            _lehmer(n, x, c)
            for q in range(m):
                nb = _swap_rank(n, r, x, c, fact, <int>g[q, 0], <int>g[q, 1])
                if dist[nb] < 0:
                    dist[nb] = dist[r] + 1
                    queue[tail] = nb
                    tail += 1
    return dist_arr
