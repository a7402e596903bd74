"""Reference implementations of the integer kernels.

Every function here has a twin in ``_speedups.pyx`` with the same signature
and the same results; ``_kernels`` picks one at import time.
"""


def bwt_codes(codes):
    """Last column of the sorted rotation matrix of ``codes`` (a list of ints)."""
    n = len(codes)
    doubled = list(codes) * 2
    starts = sorted(range(n), key=lambda i: doubled[i:i + n])
    return [doubled[i + n - 1] for i in starts]


def clusters_codes(codes_d, a_of_d):
    """True iff the BWT of ``codes_d`` is made of blocks increasing under ``a_of_d``.

    ``codes_d`` holds the word as ranks in the sorting order, ``a_of_d[c]`` is
    the rank of letter ``c`` in the block order.
    """
    if not codes_d:
        return True
    last = bwt_codes(codes_d)
    previous = a_of_d[last[0]]
    for c in last[1:]:
        rank = a_of_d[c]
        if rank < previous:
            return False
        previous = rank
    return True


def first_crossing(xs, ys):
    """Index pair of the first two crossing edges, or None.

    Edge ``k`` joins left rank ``xs[k]`` to right rank ``ys[k]``.  Edges
    sharing an endpoint never cross.
    """
    m = len(xs)
    for i in range(m):
        xi = xs[i]
        yi = ys[i]
        for j in range(i + 1, m):
            xj = xs[j]
            yj = ys[j]
            if xi != xj and yi != yj and ((xi < xj) != (yi < yj)):
                return (i, j)
    return None


def unit_cylinder(word, starts, ends, shifts):
    """Cylinder ``[lo, hi)`` of ``word`` for an integer-length standard IET.

    ``word`` is a list of letter indices, letter ``e`` is defined on
    ``[starts[e], ends[e])`` and translated by ``shifts[e]``.  Returns
    ``(lo, hi)`` with ``lo >= hi`` meaning empty.
    """
    e = word[-1]
    lo = starts[e]
    hi = ends[e]
    for k in range(len(word) - 2, -1, -1):
        e = word[k]
        s = shifts[e]
        lo -= s
        hi -= s
        if lo < starts[e]:
            lo = starts[e]
        if hi > ends[e]:
            hi = ends[e]
        if lo >= hi:
            return (lo, lo)
    return (lo, hi)


def _next_composition(parts, q):
    """Lexicographic successor among compositions of ``q`` into ``len(parts)`` parts, or None."""
    r = len(parts)
    prefix = 0
    sums = []
    for p in parts[:-1]:
        prefix += p
        sums.append(prefix)
    for i in range(r - 2, -1, -1):
        rest = q - (sums[i] + 1) - (r - 2 - i)
        if rest >= 1:
            return parts[:i] + [parts[i] + 1] + [1] * (r - 2 - i) + [rest]
    return None


def _gcd_one(parts):
    g = 0
    for p in parts:
        a, b = g, p
        while b:
            a, b = b, a % b
        g = a
    return g == 1


def _all_cylinders_nonempty(words, parts, a_of_d):
    r = len(parts)
    starts = [0] * r
    ends = [0] * r
    cur = 0
    for c in range(r):
        starts[c] = cur
        cur += parts[c]
        ends[c] = cur
    d_of_a = [0] * r
    for c in range(r):
        d_of_a[a_of_d[c]] = c
    image = [0] * r
    cur = 0
    for k in range(r):
        c = d_of_a[k]
        image[c] = cur
        cur += parts[c]
    shifts = [image[c] - starts[c] for c in range(r)]
    for w in words:
        lo, hi = unit_cylinder(w, starts, ends, shifts)
        if lo >= hi:
            return False
    return True


def next_standard_witness(words, a_of_d, max_den, after=None):
    """First integer length vector after ``after`` whose standard IET codes every word.

    Letters are indexed by their ``<_D`` rank and ``a_of_d`` gives their
    ``<_A`` rank.  Vectors are visited by increasing total ``q <= max_den``
    then lexicographically; vectors with a common factor are skipped.
    Returns the parts (summing to their denominator) or None.
    """
    r = len(a_of_d)
    if after is None:
        q = r
        parts = [1] * r
    else:
        q = sum(after)
        parts = _next_composition(list(after), q)
    while q <= max_den:
        while parts is not None:
            if _gcd_one(parts) and _all_cylinders_nonempty(words, parts, a_of_d):
                return parts
            parts = _next_composition(parts, q) if r > 1 else None
        q += 1
        parts = [1] * (r - 1) + [q - r + 1]
    return None
