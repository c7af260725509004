# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled engine for exhaustive equal-partition optimization (p in {0, 1}).

Behavioral twin of _bruteforce_py.best_equal_partition: same canonical
enumeration order, same pruning, bit-identical results.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy


cdef struct Ctx:
    long long* coords      # n * d, row-major
    long* members          # positions in cluster-completion order
    long* cur              # current cluster per position, -1 if unassigned
    long* best_assign
    unsigned char* used
    long long* buf         # s scratch values for per-coordinate sorting
    long n, d, k, s, p
    long n_members
    long long best_cost
    int have_best


cdef long long cluster_cost(Ctx* ctx) noexcept:
    # cost of the s most recently placed members, at their optimum center
    cdef long long total = 0, v
    cdef long h, i, j
    cdef long s = ctx.s
    cdef long base = ctx.n_members - s
    cdef long long* buf = ctx.buf
    cdef long run, best_run, mid
    for h in range(ctx.d):
        for i in range(s):
            v = ctx.coords[ctx.members[base + i] * ctx.d + h]
            j = i
            while j > 0 and buf[j - 1] > v:
                buf[j] = buf[j - 1]
                j -= 1
            buf[j] = v
        if ctx.p == 0:
            best_run = 1
            run = 1
            for i in range(1, s):
                if buf[i] == buf[i - 1]:
                    run += 1
                else:
                    run = 1
                if run > best_run:
                    best_run = run
            total += s - best_run
        else:
            mid = (s - 1) >> 1
            for i in range(s):
                if buf[i] >= buf[mid]:
                    total += buf[i] - buf[mid]
                else:
                    total += buf[mid] - buf[i]
    return total


cdef void complete(Ctx* ctx, long cluster_idx, long long total) noexcept:
    cdef long anchor
    if cluster_idx == ctx.k:
        if (not ctx.have_best) or total < ctx.best_cost:
            ctx.best_cost = total
            ctx.have_best = 1
            memcpy(ctx.best_assign, ctx.cur, ctx.n * sizeof(long))
        return
    anchor = 0
    while ctx.used[anchor]:
        anchor += 1
    ctx.used[anchor] = 1
    ctx.cur[anchor] = cluster_idx
    ctx.members[ctx.n_members] = anchor
    ctx.n_members += 1
    extend(ctx, anchor + 1, cluster_idx, total)
    ctx.n_members -= 1
    ctx.cur[anchor] = -1
    ctx.used[anchor] = 0


cdef void extend(Ctx* ctx, long start, long cluster_idx, long long total) noexcept:
    cdef long pos
    cdef long long new_total
    if ctx.n_members % ctx.s == 0:
        new_total = total + cluster_cost(ctx)
        if ctx.have_best and new_total >= ctx.best_cost:
            return
        complete(ctx, cluster_idx + 1, new_total)
        return
    for pos in range(start, ctx.n):
        if ctx.used[pos]:
            continue
        ctx.used[pos] = 1
        ctx.cur[pos] = cluster_idx
        ctx.members[ctx.n_members] = pos
        ctx.n_members += 1
        extend(ctx, pos + 1, cluster_idx, total)
        ctx.n_members -= 1
        ctx.cur[pos] = -1
        ctx.used[pos] = 0


def best_equal_partition(coords, long k, long p):
    """Minimum-cost equal k-partition; see _bruteforce_py for the contract."""
    cdef long n = len(coords)
    if k <= 0 or n % k != 0 or n == 0:
        raise ValueError("need k >= 1 dividing n >= 1")
    if p != 0 and p != 1:
        raise ValueError("engine supports p in {0, 1}")
    cdef long d = len(coords[0])
    cdef Ctx ctx
    ctx.n = n
    ctx.d = d
    ctx.k = k
    ctx.s = n // k
    ctx.p = p
    ctx.n_members = 0
    ctx.best_cost = 0
    ctx.have_best = 0
    ctx.coords = <long long*>malloc(n * d * sizeof(long long))
    ctx.members = <long*>malloc(n * sizeof(long))
    ctx.cur = <long*>malloc(n * sizeof(long))
    ctx.best_assign = <long*>malloc(n * sizeof(long))
    ctx.used = <unsigned char*>malloc(n * sizeof(unsigned char))
    ctx.buf = <long long*>malloc(ctx.s * sizeof(long long))
    if (ctx.coords == NULL or ctx.members == NULL or ctx.cur == NULL or
            ctx.best_assign == NULL or ctx.used == NULL or ctx.buf == NULL):
        free(ctx.coords); free(ctx.members); free(ctx.cur)
        free(ctx.best_assign); free(ctx.used); free(ctx.buf)
        raise MemoryError()
    cdef long i, h
    try:
        for i in range(n):
            row = coords[i]
            if len(row) != d:
                raise ValueError("points of mixed dimension")
            for h in range(d):
                ctx.coords[i * d + h] = row[h]
            ctx.cur[i] = -1
            ctx.used[i] = 0
        complete(&ctx, 0, 0)
        assert ctx.have_best
        return int(ctx.best_cost), [ctx.best_assign[i] for i in range(n)]
    finally:
        free(ctx.coords); free(ctx.members); free(ctx.cur)
        free(ctx.best_assign); free(ctx.used); free(ctx.buf)
