"""Saturating extension graphs, extending finite languages, and building IETs that code them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import _kernels
from .iet import AffinePiece, Interval, PiecewiseAffineIet, cylinder, make_standard
from .language import (
    Explicit,
    ExtensionGraph,
    FactorialLanguage,
    OrderVerdict,
    _first_crossing,
    build_language,
    connections,
    extension_graph,
    finite_language,
    IetCoding,
    order_condition,
)
from .words import OrderPair, alphabet_of, reverse

MAX_SEARCH_ALPHABET = 4
MAX_SEARCH_DENOMINATOR = 64


class ConstructionError(ValueError):
    """A precondition failed, or an internal geometric step could not be met."""


# -- saturation -----------------------------------------------------------------


def _crosses(edges, pair) -> bool:
    return _first_crossing(sorted(edges), pair) is not None


def saturate(g: ExtensionGraph, partner: ExtensionGraph | None = None):
    """Add non-crossing edges, leftmost first, until none can be added.

    The leftmost candidate minimizes (``<_A`` rank of x, ``<_D`` rank of y).
    With ``partner`` (the graph of the reversed word, or ``g`` itself for a
    palindrome) every added edge ``(x, y)`` is mirrored as ``(y, x)`` there,
    and a candidate is only taken when both graphs stay non-crossing.
    Returns the saturated graph, or the pair of graphs when a partner is given.
    """
    pair = g.pair
    if g.crossing() is not None:
        raise ConstructionError(f"the graph of {g.word!r} already has crossing edges {g.crossing()}")
    same = partner is g or (partner is not None and partner.word == g.word)
    edges = set(g.edges)
    mirror = set(edges) if same else (set(partner.edges) if partner is not None else None)
    if partner is not None and not same and partner.crossing() is not None:
        raise ConstructionError(f"the graph of {partner.word!r} already has crossing edges")
    ra, rd = pair.order_a.rank, pair.order_d.rank
    candidates = sorted(((x, y) for x in g.left for y in g.right), key=lambda e: (ra(e[0]), rd(e[1])))
    # one pass suffices: crossings only grow as edges are added
    for x, y in candidates:
        if (x, y) in edges:
            continue
        if same:
            trial = edges | {(x, y), (y, x)}
            if (y, x) not in edges and not (y in g.left and x in g.right):
                continue
            if not _crosses(trial, pair):
                edges = trial
        elif partner is not None:
            if y not in partner.left or x not in partner.right:
                raise ConstructionError(f"mirror edge ({y}, {x}) has no vertices in the graph of {partner.word!r}")
            if not _crosses(edges | {(x, y)}, pair) and not _crosses(mirror | {(y, x)}, pair):
                edges.add((x, y))
                mirror.add((y, x))
        elif not _crosses(edges | {(x, y)}, pair):
            edges.add((x, y))
    out = g.with_edges(edges)
    if partner is None:
        return out
    return (out, out) if same else (out, partner.with_edges(mirror))


@dataclass(frozen=True)
class MarkerOrdering:
    """Interleaving of the interior left and right boundaries of a staircase graph.

    ``sequence`` lists ``("beta", i)`` (boundary before the i-th left vertex,
    0-based) and ``("gamma", j)`` (boundary before the j-th right vertex) from
    left to right.  ``zones[l]`` holds the gamma indices lying between the
    l-th and (l+1)-th beta boundaries, the outer ends counting as betas.
    """

    sequence: tuple[tuple[str, int], ...]
    zones: tuple[tuple[int, ...], ...]


def ordering_from_graph(g: ExtensionGraph) -> MarkerOrdering:
    """Staircase walk from the first edge to the last one."""
    p, q = len(g.left), len(g.right)
    if p == 0 or q == 0:
        raise ConstructionError(f"the graph of {g.word!r} has no vertices on one side")
    index = {(g.left.index(x), g.right.index(y)) for x, y in g.edges}
    if (0, 0) not in index or (p - 1, q - 1) not in index:
        raise ConstructionError(f"the graph of {g.word!r} is not a staircase (corner edge missing)")
    i = j = 0
    seq = []
    zones = [[] for _ in range(p)]
    while (i, j) != (p - 1, q - 1):
        right, down = (i, j + 1) in index, (i + 1, j) in index
        if right and down:
            raise ConstructionError(f"the graph of {g.word!r} is not a staircase (crossing at {g.left[i]}, {g.right[j]})")
        if right:
            j += 1
            seq.append(("gamma", j))
            zones[i].append(j)
        elif down:
            i += 1
            seq.append(("beta", i))
        else:
            raise ConstructionError(f"the graph of {g.word!r} is not saturated at ({g.left[i]}, {g.right[j]})")
    if len(index) != p + q - 1:
        raise ConstructionError(f"the graph of {g.word!r} has edges off its staircase")
    return MarkerOrdering(tuple(seq), tuple(tuple(z) for z in zones))


# -- language extension ----------------------------------------------------------


def _base(W, pair, symmetric):
    W = list(W)
    if not W or any(not w for w in W):
        raise ConstructionError("W must be a nonempty set of nonempty words")
    letters = alphabet_of(W)
    missing = set(letters) - pair.alphabet
    if missing:
        raise ConstructionError(f"letters {''.join(sorted(missing))!r} are not ordered by {pair}")
    sub = pair.restrict(letters)
    if symmetric and not pair.is_symmetric:
        raise ConstructionError("symmetric extension needs a symmetric pair")
    F = finite_language(W, closure_reversal=symmetric)
    verdict = order_condition(F, sub)
    if not verdict:
        which = "F(W) ∪ F(reversed W)" if symmetric else "F(W)"
        raise ConstructionError(f"{which} does not satisfy the order condition: {verdict.describe()}")
    return W, letters, sub, F


def _graph(w, pair, left, right, F):
    edges = {(x, y) for x in left for y in right if x + w + y in F}
    return ExtensionGraph(w, pair, tuple(left), tuple(right), frozenset(edges))


def extend_language(W: Iterable[str], pair: OrderPair, horizon: int, symmetric: bool = False) -> FactorialLanguage:
    """Extendable language without connections that contains ``F(W)``.

    Level 2 comes from the saturated graph of the empty word.  A word ``w``
    of length ``n - 1`` with left letters ``X`` and right letters ``Y`` in
    level ``n`` gives level ``n + 1`` the words ``x w y`` for all of
    ``X x Y`` when ``w`` is not bispecial, and for the saturation of the
    edges already seen in ``F(W)`` otherwise.  In symmetric mode the graphs
    of ``w`` and its reversal are saturated together, so every level is
    closed under reversal.
    """
    W, letters, sub, F = _base(W, pair, symmetric)
    levels: list[set[str]] = [{""}, set(letters)]
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    for n in range(1, horizon):
        cur = levels[n]
        left: dict[str, set[str]] = {}
        right: dict[str, set[str]] = {}
        for u in cur:
            left.setdefault(u[1:], set()).add(u[0])
            right.setdefault(u[:-1], set()).add(u[-1])
        nxt: set[str] = set()
        done: set[str] = set()
        for w in sorted(levels[n - 1]):
            if w in done:
                continue
            X, Y = left.get(w, set()), right.get(w, set())
            if not X or not Y:
                raise ConstructionError(f"{w!r} lost its extensions at level {n}")
            if len(X) == 1 or len(Y) == 1:
                nxt.update(x + w + y for x in X for y in Y)
                done.add(w)
                continue
            g = _graph(w, sub, X, Y, F)
            if symmetric:
                wr = reverse(w)
                if wr == w:
                    g, _ = saturate(g, g)
                    nxt.update(x + w + y for x, y in g.edges)
                else:
                    h = _graph(wr, sub, left.get(wr, set()), right.get(wr, set()), F)
                    g, h = saturate(g, h)
                    nxt.update(x + w + y for x, y in g.edges)
                    nxt.update(x + wr + y for x, y in h.edges)
                    done.add(wr)
            else:
                g = saturate(g)
                nxt.update(x + w + y for x, y in g.edges)
            done.add(w)
        levels.append(nxt)
    desc = f"extension of {sorted(W)} for {sub}" + (" (symmetric)" if symmetric else "")
    return FactorialLanguage(levels, source=Explicit(desc))


# -- affine builder ----------------------------------------------------------------


def _even(lo: Fraction, hi: Fraction, m: int) -> list[Fraction]:
    return [lo + (hi - lo) * Fraction(t, m + 1) for t in range(1, m + 1)]


def _initial_affine(letters_d, sub, g0) -> PiecewiseAffineIet:
    r = len(letters_d)
    gammas = [Fraction(i, r) for i in range(r + 1)]
    order = ordering_from_graph(g0)
    # betas strictly inside the gap between consecutive gamma boundaries
    betas: dict[int, Fraction] = {}
    gap, pending = 0, []
    for kind, k in order.sequence + (("gamma", r),):
        if kind == "beta":
            pending.append(k)
        else:
            for b, pos in zip(pending, _even(gammas[gap], gammas[gap + 1], len(pending))):
                betas[b] = pos
            gap, pending = k, []
    beta_pts = [Fraction(0)] + [betas[i] for i in range(1, r)] + [Fraction(1)]
    defining, branches = {}, {}
    for e in letters_d:
        d, a = sub.order_d.rank(e), sub.order_a.rank(e)
        I = Interval(gammas[d], gammas[d + 1])
        lo, hi = beta_pts[a], beta_pts[a + 1]
        slope = (hi - lo) / I.length
        defining[e] = I
        branches[e] = [AffinePiece(I, slope, lo - slope * I.left)]
    return PiecewiseAffineIet(sub, defining, branches)


def _pull_back_word(T, w, z):
    """The point of ``[w]`` whose ``|w|``-th iterate is ``z``, and its first iterate."""
    path = [z]
    for e in reversed(w):
        z = T.branch_preimage(e, z)
        path.append(z)
    return z, path[-2]


def _interpolating_pieces(nodes):
    pieces = []
    for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
        if not (x0 < x1 and y0 < y1):
            raise ConstructionError("interpolation nodes are not increasing")
        slope = (y1 - y0) / (x1 - x0)
        pieces.append(AffinePiece(Interval(x0, x1), slope, y0 - slope * x0))
    return pieces


def _replace_on(pieces, J, new_pieces):
    out = []
    for p in pieces:
        if p.source.right <= J.left or p.source.left >= J.right:
            out.append(p)
            continue
        if p.source.left < J.left:
            out.append(p.cut(p.source.left, J.left))
        if p.source.right > J.right:
            out.append(p.cut(J.right, p.source.right))
    out.extend(new_pieces)
    out.sort(key=lambda p: p.source.left)
    merged = []
    for p in out:
        if merged and merged[-1].slope == p.slope and merged[-1].offset == p.offset:
            merged[-1] = merged[-1].cut(merged[-1].source.left, p.source.right)
        else:
            merged.append(p)
    return merged


def build_affine(W: Iterable[str], pair: OrderPair, language: FactorialLanguage | None = None) -> PiecewiseAffineIet:
    """Affine IET with the orders of ``pair`` whose coding contains ``W``.

    Its words of length ``n <= N`` (the longest word of ``W``) are exactly
    level ``n`` of :func:`extend_language`.  The map starts as one affine
    branch per letter arranged by the saturated graph of the empty word.
    Then, length by length, the map is bent inside the cylinder of each
    bispecial ``w`` so that the boundaries between the ``[w y]`` fall into
    the gaps between the images ``T[x w]`` prescribed by the saturated graph
    of ``w``; the image of the cylinder is left unchanged.
    """
    W = list(W)
    W, letters, sub, F = _base(W, pair, False)
    N = max(2, max(len(w) for w in W))
    Ln = language if language is not None else extend_language(W, pair, N)
    if Ln.depth < N:
        raise ValueError("the supplied extension is too shallow")
    letters_d = sub.order_d.letters
    g0 = ExtensionGraph("", sub, tuple(letters), tuple(letters),
                        frozenset((u[0], u[1]) for u in Ln.factors(2)))
    T = _initial_affine(letters_d, sub, g0)
    for n in range(3, N + 1):
        plans = []
        for w in sorted(Ln.factors(n - 2)):
            X = sub.order_a.sort(x for x in letters if x + w in Ln.factors(n - 1))
            Y = sub.order_d.sort(y for y in letters if w + y in Ln.factors(n - 1))
            if len(X) < 2 or len(Y) < 2:
                continue
            edges = frozenset((x, y) for x in X for y in Y if x + w + y in Ln.factors(n))
            g = ExtensionGraph(w, sub, X, Y, edges)
            try:
                order = ordering_from_graph(g)
            except ConstructionError as exc:
                raise ConstructionError(f"bispecial {w!r}: {exc}") from None
            J = cylinder(T, w)
            if J.empty:
                raise ConstructionError(f"bispecial {w!r} has an empty cylinder")
            betas = [J.left] + [T.images[x].left for x in X[1:]] + [J.right]
            if not all(a < b for a, b in zip(betas, betas[1:])):
                raise ConstructionError(f"bispecial {w!r}: image boundaries are not interior to its cylinder")
            targets = []
            for y in Y[1:]:
                _, first = _pull_back_word(T, w, T.defining[y].left)
                targets.append(first)
            qs = {}
            for l, zone in enumerate(order.zones):
                for j, pos in zip(zone, _even(betas[l], betas[l + 1], len(zone))):
                    qs[j] = pos
            e0 = w[0]
            nodes = [(J.left, T.branch_value(e0, J.left))]
            nodes += [(qs[j], targets[j - 1]) for j in range(1, len(Y))]
            nodes.append((J.right, T.branch_value(e0, J.right)))
            plans.append((e0, J, _interpolating_pieces(nodes)))
        if not plans:
            continue
        branches = {e: list(T.branches[e]) for e in letters_d}
        for e0, J, new in plans:
            branches[e0] = _replace_on(branches[e0], J, new)
        T = PiecewiseAffineIet(sub, T.defining, branches)
    return T


def coding_matches(T: PiecewiseAffineIet, L: FactorialLanguage, upto: int) -> bool:
    from .iet import coding_factors

    levels = coding_factors(T, upto)
    return all(levels[n] == set(L.factors(n)) for n in range(upto + 1))


# -- standard symmetric production ------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    producible: bool
    verdict: OrderVerdict

    def __bool__(self):
        return self.producible

    def describe(self) -> str:
        if self.producible:
            return "producible"
        return f"not producible: {self.verdict.describe()}"


def decide_standard_symmetric(W: Iterable[str], pair: OrderPair) -> Decision:
    """Whether the words of ``W`` all occur in the coding of one standard IET with the symmetric ``pair``.

    A single word needs the order condition on its factors; a set needs it on
    the factors of the set closed under reversal.
    """
    if not pair.is_symmetric:
        raise ConstructionError("decision only available for symmetric pairs")
    W = list(dict.fromkeys(W))
    if not W:
        raise ConstructionError("W must hold at least one word")
    L = finite_language(W, closure_reversal=len(W) > 1)
    return Decision(bool(order_condition(L, pair)), order_condition(L, pair))


def standard_iet_search(
    W: Iterable[str],
    pair: OrderPair,
    max_den: int = 24,
    connection_depth: int | None = None,
) -> PiecewiseAffineIet | None:
    """First standard IET with rational lengths of denominator ``<= max_den`` coding every word of ``W``.

    Length vectors are visited by increasing denominator, then
    lexicographically along ``<_D``.  With ``connection_depth`` a candidate
    must also have no connection on bispecials of length up to
    ``connection_depth - 2``.  A returned IET is a certificate; None only says
    nothing was found at this resolution.
    """
    r = len(pair.order_d)
    if r > MAX_SEARCH_ALPHABET:
        raise ConstructionError(f"search limited to alphabets of size <= {MAX_SEARCH_ALPHABET}")
    if not 1 <= max_den <= MAX_SEARCH_DENOMINATOR:
        raise ConstructionError(f"max_den must be between 1 and {MAX_SEARCH_DENOMINATOR}")
    W = list(W)
    rd = pair.order_d.ranks
    try:
        words = [[rd[x] for x in w] for w in W if w]
    except KeyError as exc:
        raise ConstructionError(f"letter {exc.args[0]!r} is not ordered by {pair}") from None
    a_of_d = [pair.order_a.rank(x) for x in pair.order_d.letters]
    after = None
    while True:
        parts = _kernels.next_standard_witness(words, a_of_d, max_den, after)
        if parts is None:
            return None
        q = sum(parts)
        T = make_standard(pair, [Fraction(p, q) for p in parts])
        if connection_depth is None or not _has_connection(T, connection_depth):
            return T
        after = parts


def _has_connection(T, depth):
    if depth < 2:
        return False
    L = build_language(IetCoding(T), depth, cap=max(64, depth))
    return bool(connections(L, T.pair, depth - 2))
