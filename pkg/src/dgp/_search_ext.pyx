# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound kernel; same contract as ``dgp._search``."""

from libc.stdlib cimport malloc, realloc, free, qsort
from libc.stdint cimport int64_t, uint64_t

MAX_N = 40


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


ctypedef struct Cand:
    int64_t loss
    uint64_t block
    int64_t dens
    int64_t su


ctypedef struct CandBuf:
    Cand* items
    Py_ssize_t size
    Py_ssize_t cap


ctypedef struct State:
    int n
    uint64_t masks[64]
    int64_t ucap[64]
    int64_t gcap[65]
    int64_t scale
    int64_t half
    bint prune_connected
    bint prune_bound
    int64_t best_value
    int best_k
    int best_labels[64]
    int labels[64]
    bint oom


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


cdef int cmp_cand(const void* a, const void* b) noexcept nogil:
    cdef const Cand* x = <const Cand*> a
    cdef const Cand* y = <const Cand*> b
    if x.loss < y.loss:
        return -1
    if x.loss > y.loss:
        return 1
    if x.block < y.block:
        return -1
    if x.block > y.block:
        return 1
    return 0


cdef inline bint pruned(State* st, int64_t bound, int k) noexcept nogil:
    return bound < st.best_value or (bound == st.best_value and k + 1 > st.best_k)


cdef int push(CandBuf* buf, int64_t loss, uint64_t block, int64_t dens, int64_t su) noexcept nogil:
    cdef Cand* grown
    if buf.size == buf.cap:
        buf.cap = buf.cap * 2 if buf.cap else 64
        grown = <Cand*> realloc(buf.items, buf.cap * sizeof(Cand))
        if grown == NULL:
            return -1
        buf.items = grown
    buf.items[buf.size].loss = loss
    buf.items[buf.size].block = block
    buf.items[buf.size].dens = dens
    buf.items[buf.size].su = su
    buf.size += 1
    return 0


cdef int edges_in(State* st, uint64_t block) noexcept nogil:
    cdef int e = 0
    cdef uint64_t b = block
    while b:
        e += popc(st.masks[ctz(b)] & block)
        b &= b - 1
    return e >> 1


cdef int64_t sum_ucap(State* st, uint64_t block) noexcept nogil:
    cdef int64_t t = 0
    cdef uint64_t b = block
    while b:
        t += st.ucap[ctz(b)]
        b &= b - 1
    return t


cdef void visit(State* st, CandBuf* out, uint64_t rem, int64_t acc, int64_t urest, int k,
                uint64_t block, int size, int e, int64_t su, int64_t used,
                uint64_t cand, uint64_t banned) noexcept nogil:
    cdef int64_t dens, b, g, d, nused, nsu
    cdef uint64_t low, nblock, bb, ncand
    cdef int u, ne, nsize
    dens = e * (st.scale // size)
    if st.prune_bound:
        if pruned(st, acc + urest - used, k):
            return
        if not pruned(st, acc + dens + urest - su, k):
            if push(out, su - dens, block, dens, su) < 0:
                st.oom = True
                return
    else:
        if push(out, su - dens, block, dens, su) < 0:
            st.oom = True
            return
    while cand:
        low = cand & (~cand + 1)
        cand ^= low
        u = ctz(low)
        nblock = block | low
        nsize = size + 1
        ne = e + popc(st.masks[u] & block)
        nsu = su + st.ucap[u]
        nused = 0
        if st.prune_bound:
            g = st.gcap[nsize]
            bb = nblock
            while bb:
                d = st.ucap[ctz(bb)] - g
                if d > 0:
                    nused += d
                bb &= bb - 1
        ncand = cand | (st.masks[u] & rem & ~nblock & ~banned)
        visit(st, out, rem, acc, urest, k, nblock, nsize, ne, nsu, nused, ncand, banned)
        if st.oom:
            return
        banned |= low


cdef void node(State* st, uint64_t rem, int64_t acc, int64_t urest, int k) noexcept nogil:
    cdef int r, v, i, size
    cdef int64_t rest, bound, dens, su, alt
    cdef uint64_t start, rest_bits, sub, block, b
    cdef CandBuf buf
    cdef bint better
    if rem == 0:
        better = False
        if acc > st.best_value:
            better = True
        elif acc == st.best_value:
            if k < st.best_k:
                better = True
            elif k == st.best_k:
                for i in range(st.n):
                    if st.labels[i] != st.best_labels[i]:
                        better = st.labels[i] < st.best_labels[i]
                        break
        if better:
            st.best_value = acc
            st.best_k = k
            for i in range(st.n):
                st.best_labels[i] = st.labels[i]
        return
    r = popc(rem)
    if st.prune_bound:
        rest = urest
        if (r - 1) * st.half < rest:
            rest = (r - 1) * st.half
        if r >= 2:
            alt = edges_in(st, rem) * st.scale // r
            if (r - 2) * st.half > alt:
                alt = (r - 2) * st.half
            if alt < rest:
                rest = alt
        if pruned(st, acc + rest, k):
            return
    v = ctz(rem)
    start = (<uint64_t> 1) << v
    buf.items = NULL
    buf.size = 0
    buf.cap = 0
    if st.prune_connected:
        if st.prune_bound and st.ucap[v] - st.gcap[1] > 0:
            visit(st, &buf, rem, acc, urest, k, start, 1, 0, st.ucap[v],
                  st.ucap[v] - st.gcap[1], st.masks[v] & rem, start)
        else:
            visit(st, &buf, rem, acc, urest, k, start, 1, 0, st.ucap[v], 0,
                  st.masks[v] & rem, start)
    else:
        rest_bits = rem & ~start
        sub = rest_bits
        while True:
            block = sub | start
            size = popc(block)
            dens = edges_in(st, block) * (st.scale // size)
            su = sum_ucap(st, block)
            if not st.prune_bound or not pruned(st, acc + dens + urest - su, k):
                if push(&buf, su - dens, block, dens, su) < 0:
                    st.oom = True
                    break
            if sub == 0:
                break
            sub = (sub - 1) & rest_bits
    if not st.oom:
        qsort(buf.items, buf.size, sizeof(Cand), cmp_cand)
        for i in range(buf.size):
            b = buf.items[i].block
            while b:
                st.labels[ctz(b)] = k
                b &= b - 1
            node(st, rem & ~buf.items[i].block, acc + buf.items[i].dens,
                 urest - buf.items[i].su, k + 1)
            if st.oom:
                break
    free(buf.items)


ctypedef struct UState:
    int n
    uint64_t masks[64]
    int64_t cap_num[66]
    int64_t cap_den[66]
    int64_t be
    int64_t bs


cdef inline bint capped(UState* st, int nxt) noexcept nogil:
    return st.cap_num[nxt] * st.bs * st.bs <= st.be * st.cap_den[nxt]


cdef void uvisit(UState* st, uint64_t block, int size, int e, uint64_t cand,
                 uint64_t banned) noexcept nogil:
    cdef uint64_t low, nblock
    cdef int w, nxt = size + 1
    if e * st.bs * st.bs > st.be * size * size:
        st.be = e
        st.bs = size
    if nxt > st.n or capped(st, nxt):
        return
    while cand:
        low = cand & (~cand + 1)
        cand ^= low
        w = ctz(low)
        nblock = block | low
        uvisit(st, nblock, nxt, e + popc(st.masks[w] & block),
               cand | (st.masks[w] & ~nblock & ~banned), banned)
        banned |= low
        if capped(st, nxt):
            return


def utility_maxima(int n, masks, cap_num, cap_den):
    """See ``dgp._search.utility_maxima``; limited to ``n <= MAX_N``."""
    if n > MAX_N or n < 1:
        raise ValueError(f"compiled kernel supports 1 <= n <= {MAX_N}")
    cdef UState st
    cdef int i, x
    st.n = n
    for i in range(n):
        st.masks[i] = masks[i]
    for i in range(n + 1):
        st.cap_num[i] = cap_num[i]
        st.cap_den[i] = cap_den[i]
    out = []
    for x in range(n):
        st.be = 0
        st.bs = 1
        with nogil:
            uvisit(&st, (<uint64_t> 1) << x, 1, 0, st.masks[x], (<uint64_t> 1) << x)
        out.append((st.be, st.bs))
    return out


def best_partition(int n, masks, scale, ucap, gcap, bint prune_connected, bint prune_bound,
                   init_value, init_labels):
    """See ``dgp._search.best_partition``; limited to ``n <= MAX_N``."""
    if n > MAX_N or n < 1:
        raise ValueError(f"compiled kernel supports 1 <= n <= {MAX_N}")
    cdef State* st = <State*> malloc(sizeof(State))
    if st == NULL:
        raise MemoryError()
    cdef int i
    cdef int64_t total = 0
    try:
        st.n = n
        st.scale = scale
        st.half = scale // 2
        st.prune_connected = prune_connected
        st.prune_bound = prune_bound
        st.oom = False
        for i in range(n):
            st.masks[i] = masks[i]
            st.ucap[i] = ucap[i]
            total += st.ucap[i]
            st.labels[i] = 0
            st.best_labels[i] = init_labels[i]
        for i in range(n + 1):
            st.gcap[i] = gcap[i]
        st.best_value = init_value
        st.best_k = max(init_labels) + 1
        with nogil:
            node(st, ((<uint64_t> 1) << n) - 1 if n < 64 else <uint64_t> -1, 0, total, 0)
        if st.oom:
            raise MemoryError("candidate buffer allocation failed")
        return st.best_value, [st.best_labels[i] for i in range(n)]
    finally:
        free(st)
