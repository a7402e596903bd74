"""Independent brute-force oracles.

Nothing here imports the package's algorithms: each function recomputes its
answer straight from the definition, by the slowest obvious route.
"""
from fractions import Fraction
from itertools import product


def bwt(w, order):
    rank = {x: i for i, x in enumerate(order)}
    rots = [w[i:] + w[:i] for i in range(len(w))]
    rots.sort(key=lambda u: [rank[x] for x in u])
    return "".join(u[-1] for u in rots)


def clusters(w, order_a, order_d):
    last = bwt(w, order_d)
    blocks = []
    for x in last:
        if not blocks or blocks[-1] != x:
            blocks.append(x)
    if len(blocks) != len(set(blocks)):
        return False
    ra = {x: i for i, x in enumerate(order_a)}
    return all(ra[a] < ra[b] for a, b in zip(blocks, blocks[1:]))


def factors(words, n):
    return {w[i:i + n] for w in words for i in range(len(w) - n + 1)}


def periodic_factors(w, n):
    return factors([w * (n // len(w) + 2)], n)


def order_condition(fac, order_a, order_d, maxlen):
    """``fac(n)`` returns the set of words of length n."""
    ra = {x: i for i, x in enumerate(order_a)}
    rd = {x: i for i, x in enumerate(order_d)}
    for n in range(maxlen + 1):
        big = fac(n + 2)
        for w in fac(n):
            edges = [(u[0], u[-1]) for u in big if u[1:-1] == w]
            left_ok = {u[0] for u in fac(n + 1) if u[1:] == w}
            right_ok = {u[-1] for u in fac(n + 1) if u[:-1] == w}
            if len(left_ok) < 2 or len(right_ok) < 2:
                continue
            for (x, y), (x2, y2) in product(edges, edges):
                if x != x2 and y != y2 and (ra[x] < ra[x2]) != (rd[y] < rd[y2]):
                    return False
    return True


def standard_map(order_a, order_d, lengths):
    """Return ``T`` for the standard IET with lengths listed along ``order_d``."""
    lam = dict(zip(order_d, map(Fraction, lengths)))
    left, start = {}, Fraction(0)
    for e in order_d:
        left[e] = start
        start += lam[e]
    img, start = {}, Fraction(0)
    for e in order_a:
        img[e] = start
        start += lam[e]

    def letter(x):
        for e in order_d:
            if left[e] <= x < left[e] + lam[e]:
                return e
        raise ValueError(x)

    def T(x):
        e = letter(x)
        return x - left[e] + img[e]

    return T, letter


def itinerary(T, letter, x, n):
    out = []
    for _ in range(n):
        out.append(letter(x))
        x = T(x)
    return "".join(out)


def first_return(T, inside, x, cap=10_000):
    """``(T^k x, k)`` for the least ``k > 0`` with ``T^k x`` inside."""
    y = T(x)
    for k in range(1, cap):
        if inside(y):
            return y, k
        y = T(y)
    raise RuntimeError("no return")


def is_palindrome(w):
    return w == w[::-1]


def return_words_in(text, w):
    """Suffix return words of ``w`` read along the finite word ``text``."""
    occ = [i for i in range(len(text) - len(w) + 1) if text.startswith(w, i)]
    return {text[i + len(w):j + len(w)] for i, j in zip(occ, occ[1:])}


def words_over(alphabet, n):
    return ["".join(p) for p in product(alphabet, repeat=n)]
