# cython: language_level=3
"""Compiled twins of the kernels in ``_purepy``."""

from libc.stdlib cimport malloc, free


cdef int _rot_cmp(const long *w, Py_ssize_t n, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t k
    cdef long a, b
    for k in range(n):
        a = w[(i + k) % n]
        b = w[(j + k) % n]
        if a != b:
            return -1 if a < b else 1
    return 0


cdef void _sort_rotations(const long *w, Py_ssize_t n, Py_ssize_t *idx) nogil:
    # stable insertion sort; n is small at the scales this package handles
    cdef Py_ssize_t i, j, cur
    for i in range(n):
        idx[i] = i
    for i in range(1, n):
        cur = idx[i]
        j = i - 1
        while j >= 0 and _rot_cmp(w, n, idx[j], cur) > 0:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = cur


def bwt_codes(codes):
    cdef Py_ssize_t n = len(codes)
    cdef Py_ssize_t i
    cdef long *w = <long *> malloc(max(n, 1) * sizeof(long))
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(max(n, 1) * sizeof(Py_ssize_t))
    try:
        for i in range(n):
            w[i] = codes[i]
        _sort_rotations(w, n, idx)
        return [w[(idx[i] + n - 1) % n] for i in range(n)]
    finally:
        free(w)
        free(idx)


def clusters_codes(codes_d, a_of_d):
    cdef Py_ssize_t n = len(codes_d)
    cdef Py_ssize_t r = len(a_of_d)
    cdef Py_ssize_t i
    cdef long prev, rank
    if n == 0:
        return True
    cdef long *w = <long *> malloc(n * sizeof(long))
    cdef long *amap = <long *> malloc(max(r, 1) * sizeof(long))
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    try:
        for i in range(n):
            w[i] = codes_d[i]
        for i in range(r):
            amap[i] = a_of_d[i]
        _sort_rotations(w, n, idx)
        prev = amap[w[(idx[0] + n - 1) % n]]
        for i in range(1, n):
            rank = amap[w[(idx[i] + n - 1) % n]]
            if rank < prev:
                return False
            prev = rank
        return True
    finally:
        free(w)
        free(amap)
        free(idx)


def first_crossing(xs, ys):
    cdef Py_ssize_t m = len(xs)
    cdef Py_ssize_t i, j
    cdef long xi, yi, xj, yj
    cdef long *cx = <long *> malloc(max(m, 1) * sizeof(long))
    cdef long *cy = <long *> malloc(max(m, 1) * sizeof(long))
    try:
        for i in range(m):
            cx[i] = xs[i]
            cy[i] = ys[i]
        for i in range(m):
            xi = cx[i]
            yi = cy[i]
            for j in range(i + 1, m):
                xj = cx[j]
                yj = cy[j]
                if xi != xj and yi != yj and ((xi < xj) != (yi < yj)):
                    return (i, j)
        return None
    finally:
        free(cx)
        free(cy)


def unit_cylinder(word, starts, ends, shifts):
    cdef Py_ssize_t k, n = len(word)
    cdef long long lo, hi, s, st, en
    cdef long e = word[n - 1]
    lo = starts[e]
    hi = ends[e]
    for k in range(n - 2, -1, -1):
        e = word[k]
        s = shifts[e]
        st = starts[e]
        en = ends[e]
        lo -= s
        hi -= s
        if lo < st:
            lo = st
        if hi > en:
            hi = en
        if lo >= hi:
            return (lo, lo)
    return (lo, hi)


cdef long _gcd(long a, long b) nogil:
    while b:
        a, b = b, a % b
    return a


cdef bint _next_comp(long *p, long r, long q) nogil:
    cdef long i, j, prefix, rest
    cdef long sums[64]
    prefix = 0
    for i in range(r - 1):
        prefix += p[i]
        sums[i] = prefix
    i = r - 2
    while i >= 0:
        rest = q - (sums[i] + 1) - (r - 2 - i)
        if rest >= 1:
            p[i] += 1
            for j in range(i + 1, r - 1):
                p[j] = 1
            p[r - 1] = rest
            return True
        i -= 1
    return False


cdef bint _codes_all(long *p, long r, const long *amap, const long *flat,
                     const long *offs, long nw) nogil:
    cdef long starts[64]
    cdef long ends[64]
    cdef long shifts[64]
    cdef long d_of_a[64]
    cdef long c, k, cur, e, wi
    cdef long long lo, hi
    cur = 0
    for c in range(r):
        starts[c] = cur
        cur += p[c]
        ends[c] = cur
    for c in range(r):
        d_of_a[amap[c]] = c
    cur = 0
    for k in range(r):
        c = d_of_a[k]
        shifts[c] = cur - starts[c]
        cur += p[c]
    for wi in range(nw):
        e = flat[offs[wi + 1] - 1]
        lo = starts[e]
        hi = ends[e]
        k = offs[wi + 1] - 2
        while k >= offs[wi]:
            e = flat[k]
            lo -= shifts[e]
            hi -= shifts[e]
            if lo < starts[e]:
                lo = starts[e]
            if hi > ends[e]:
                hi = ends[e]
            if lo >= hi:
                return False
            k -= 1
    return True


def next_standard_witness(words, a_of_d, max_den, after=None):
    cdef long r = len(a_of_d)
    cdef long q, i, g, nw = len(words), total = 0
    cdef bint more
    cdef long p[64]
    cdef long amap[64]
    if r < 1 or r > 64:
        raise ValueError("alphabet size must be between 1 and 64")
    for w in words:
        total += len(w)
    cdef long *flat = <long *> malloc(max(total, 1) * sizeof(long))
    cdef long *offs = <long *> malloc((nw + 1) * sizeof(long))
    try:
        total = 0
        offs[0] = 0
        for i, w in enumerate(words):
            for c in w:
                flat[total] = c
                total += 1
            offs[i + 1] = total
        for i in range(r):
            amap[i] = a_of_d[i]
        if after is None:
            q = r
            for i in range(r):
                p[i] = 1
            more = True
        else:
            q = sum(after)
            for i in range(r):
                p[i] = after[i]
            more = r > 1 and _next_comp(p, r, q)
        while q <= max_den:
            while more:
                g = 0
                for i in range(r):
                    g = _gcd(g, p[i])
                if g == 1 and _codes_all(p, r, amap, flat, offs, nw):
                    return [p[i] for i in range(r)]
                more = r > 1 and _next_comp(p, r, q)
            q += 1
            for i in range(r - 1):
                p[i] = 1
            p[r - 1] = q - r + 1
            more = True
        return None
    finally:
        free(flat)
        free(offs)
