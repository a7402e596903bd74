"""Factorial languages materialized up to a fixed depth, and the queries on them.

A :class:`FactorialLanguage` stores, for every length ``n <= depth``, the set
of its words of length ``n``.  Languages come from four sources: the factors
of a finite set of words (non-extendable), the factors of a periodic word
``w w w ...``, a union of eventually periodic bi-infinite words, or the
natural coding of an interval exchange.  Every query states the depth it
needs and raises :class:`InsufficientDepth` instead of truncating silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import TYPE_CHECKING, Any, Iterable, Sequence

from . import _kernels
from .words import (
    OrderPair,
    all_pairs,
    alphabet_of,
    is_palindrome,
    occurrences,
    reverse,
)

if TYPE_CHECKING:
    from .iet import PiecewiseAffineIet

DEFAULT_DEPTH_CAP = 64


class InsufficientDepth(ValueError):
    """The language is not materialized deep enough for the query."""


class DepthExhausted(InsufficientDepth):
    """Some occurrence of a word has no completed return within the depth."""


# -- sources ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteWords:
    """The non-extendable language of all factors of ``words``."""

    words: tuple[str, ...]

    def __init__(self, words: Iterable[str]):
        object.__setattr__(self, "words", tuple(words))


@dataclass(frozen=True)
class PowerWord:
    """All factors of ``word`` repeated forever."""

    word: str

    def __post_init__(self):
        if not self.word:
            raise ValueError("a power language needs a nonempty word")


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """The bi-infinite word ``...left left center right right...``."""

    left: str
    center: str
    right: str

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("both periods of an eventually periodic word must be nonempty")

    def truncation(self, depth: int) -> str:
        """A finite window containing every factor of length ``<= depth``."""
        k = math.ceil(depth / min(len(self.left), len(self.right))) + 1
        return self.left * k + self.center + self.right * k

    def __str__(self):
        return f"({self.left})^-{self.center}({self.right})^+"


@dataclass(frozen=True)
class BiInfinite:
    words: tuple[EventuallyPeriodicWord, ...]

    def __init__(self, words: Iterable[EventuallyPeriodicWord]):
        object.__setattr__(self, "words", tuple(words))


@dataclass(frozen=True)
class IetCoding:
    """Words with a nonempty cylinder for ``iet``."""

    iet: "PiecewiseAffineIet"


@dataclass(frozen=True)
class Explicit:
    """Factor sets given directly (extension results, dumps)."""

    description: str = "explicit"


# -- the language -----------------------------------------------------------


class FactorialLanguage:
    """Word sets ``L_0 .. L_depth`` of a factorial language; immutable."""

    def __init__(self, levels: Sequence[Iterable[str]], *, source: Any = None, extendable: bool = True):
        levels = tuple(frozenset(level) for level in levels)
        if not levels or levels[0] != {""}:
            raise ValueError("L_0 must be exactly the empty word")
        for n, level in enumerate(levels):
            if any(len(u) != n for u in level):
                raise ValueError(f"level {n} holds a word of the wrong length")
        self._levels = levels
        self.source = source if source is not None else Explicit()
        self.extendable = extendable
        self._left: dict[str, set[str]] | None = None
        self._right: dict[str, set[str]] | None = None
        self._bispecial_cache: dict = {}

    def __repr__(self):
        return f"FactorialLanguage(depth={self.depth}, source={self.source!r})"

    @property
    def depth(self) -> int:
        return len(self._levels) - 1

    @property
    def alphabet(self) -> str:
        return "".join(sorted(self.factors(1))) if self.depth >= 1 else ""

    @property
    def iet(self):
        return self.source.iet if isinstance(self.source, IetCoding) else None

    def factors(self, n: int) -> frozenset[str]:
        if n < 0 or n > self.depth:
            raise InsufficientDepth(f"length {n} is beyond depth {self.depth}")
        return self._levels[n]

    def __contains__(self, w: str) -> bool:
        return len(w) <= self.depth and w in self._levels[len(w)]

    def __iter__(self):
        for level in self._levels:
            yield from sorted(level)

    def _build_extensions(self):
        left: dict[str, set[str]] = {}
        right: dict[str, set[str]] = {}
        for level in self._levels[1:]:
            for u in level:
                left.setdefault(u[1:], set()).add(u[0])
                right.setdefault(u[:-1], set()).add(u[-1])
        self._left, self._right = left, right

    def left_extensions(self, w: str) -> frozenset[str]:
        if len(w) >= self.depth:
            raise InsufficientDepth(f"extensions of a word of length {len(w)} need depth > {len(w)}")
        if self._left is None:
            self._build_extensions()
        return frozenset(self._left.get(w, ()))

    def right_extensions(self, w: str) -> frozenset[str]:
        if len(w) >= self.depth:
            raise InsufficientDepth(f"extensions of a word of length {len(w)} need depth > {len(w)}")
        if self._right is None:
            self._build_extensions()
        return frozenset(self._right.get(w, ()))

    def is_bispecial(self, w: str) -> bool:
        return len(self.left_extensions(w)) >= 2 and len(self.right_extensions(w)) >= 2

    def is_factor_closed(self) -> bool:
        return all(
            u[1:] in self._levels[n - 1] and u[:-1] in self._levels[n - 1]
            for n in range(1, self.depth + 1)
            for u in self._levels[n]
        )


def _factor_levels(words: Iterable[str], depth: int) -> list[set[str]]:
    levels = [set() for _ in range(depth + 1)]
    levels[0].add("")
    for w in words:
        for n in range(1, min(depth, len(w)) + 1):
            levels[n].update(w[i:i + n] for i in range(len(w) - n + 1))
    return levels


def build_language(source, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> FactorialLanguage:
    """Materialize the language of ``source`` for all lengths up to ``depth``.

    >>> sorted(build_language(PowerWord("1312"), 3).factors(3))
    ['121', '131', '213', '312']
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > cap:
        raise ValueError(f"depth {depth} exceeds the configured cap {cap}")
    if isinstance(source, FiniteWords):
        return FactorialLanguage(_factor_levels(source.words, depth), source=source, extendable=False)
    if isinstance(source, PowerWord):
        w = source.word
        k = (depth + len(w)) // len(w) + 1
        return FactorialLanguage(_factor_levels([w * k], depth), source=source)
    if isinstance(source, BiInfinite):
        windows = [b.truncation(depth) for b in source.words]
        return FactorialLanguage(_factor_levels(windows, depth), source=source)
    if isinstance(source, IetCoding):
        from .iet import coding_factors

        return FactorialLanguage(coding_factors(source.iet, depth), source=source)
    raise TypeError(f"unknown language source {source!r}")


def finite_language(words: Iterable[str], closure_reversal: bool = False) -> FactorialLanguage:
    """``F(W)``, materialized to the length of the longest word."""
    words = list(words)
    if closure_reversal:
        words += [reverse(w) for w in words]
    depth = max([len(w) for w in words] + [1])
    return build_language(FiniteWords(words), depth, cap=max(depth, DEFAULT_DEPTH_CAP))


# -- extensions, bispecials, order condition ---------------------------------


def extensions(L: FactorialLanguage, w: str) -> tuple[frozenset[str], frozenset[str]]:
    return L.left_extensions(w), L.right_extensions(w)


def _check_maxlen(L, maxlen):
    if maxlen > L.depth - 2:
        raise InsufficientDepth(
            f"insufficient depth: bispecials of length {maxlen} need depth {maxlen + 2}, have {L.depth}"
        )


def bispecials(L: FactorialLanguage, maxlen: int) -> list[str]:
    """Bispecial words of length ``<= maxlen``, shortest first."""
    _check_maxlen(L, maxlen)
    return [
        w
        for n in range(0, maxlen + 1)
        for w in sorted(L.factors(n))
        if L.is_bispecial(w)
    ]


def _bispecial_edges(L, maxlen):
    cached = L._bispecial_cache.get(maxlen)
    if cached is None:
        cached = []
        for w in bispecials(L, maxlen):
            edges = sorted(
                (x, y)
                for x in L.left_extensions(w)
                for y in L.right_extensions(w)
                if x + w + y in L
            )
            cached.append((w, edges))
        L._bispecial_cache[maxlen] = cached
    return cached


@dataclass(frozen=True)
class ExtensionGraph:
    """Ordered bilateral extension graph of a word.

    ``left`` holds the letters ``x`` with ``xw`` in the language sorted by
    ``<_A``, ``right`` the letters ``y`` with ``wy`` sorted by ``<_D``, and
    an edge ``(x, y)`` records ``xwy``.
    """

    word: str
    pair: OrderPair
    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "left", self.pair.order_a.sort(self.left))
        object.__setattr__(self, "right", self.pair.order_d.sort(self.right))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for x, y in self.edges:
            if x not in self.left or y not in self.right:
                raise ValueError(f"edge {x}{self.word}{y} has an endpoint outside the vertex lists")

    def sorted_edges(self) -> list[tuple[str, str]]:
        ra, rd = self.pair.order_a.rank, self.pair.order_d.rank
        return sorted(self.edges, key=lambda e: (ra(e[0]), rd(e[1])))

    def with_edges(self, edges) -> "ExtensionGraph":
        return ExtensionGraph(self.word, self.pair, self.left, self.right, frozenset(edges))

    def crossing(self) -> tuple[tuple[str, str], tuple[str, str]] | None:
        """Two edges that cross (sharing an endpoint does not count), or None."""
        return _first_crossing(self.sorted_edges(), self.pair)


def _first_crossing(edges, pair):
    ra, rd = pair.order_a.ranks, pair.order_d.ranks
    hit = _kernels.first_crossing([ra[x] for x, _ in edges], [rd[y] for _, y in edges])
    if hit is None:
        return None
    return edges[hit[0]], edges[hit[1]]


def extension_graph(L: FactorialLanguage, w: str, pair: OrderPair) -> ExtensionGraph:
    if len(w) > L.depth - 2:
        raise InsufficientDepth(f"the extension graph of a word of length {len(w)} needs depth {len(w) + 2}")
    left, right = extensions(L, w)
    edges = {(x, y) for x in left for y in right if x + w + y in L}
    return ExtensionGraph(w, pair, tuple(left), tuple(right), frozenset(edges))


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of an order-condition check; falsy when violated.

    On violation ``word`` is the bispecial witness and ``edges`` two of its
    crossing bilateral extensions ``(x, y)``, ``(x', y')``.
    """

    holds: bool
    word: str | None = None
    edges: tuple[tuple[str, str], tuple[str, str]] | None = None

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "holds"
        (x, y), (x2, y2) = self.edges
        w = self.word
        return f"violated at bispecial {w!r}: {x}{w}{y} and {x2}{w}{y2} cross"


def order_condition(L: FactorialLanguage, pair: OrderPair, maxlen: int | None = None) -> OrderVerdict:
    """Check that no bispecial of length ``<= maxlen`` has crossing extensions.

    ``maxlen`` defaults to ``depth - 2``, i.e. every bispecial the
    materialized language can resolve.
    """
    if maxlen is None:
        maxlen = L.depth - 2
    if maxlen < 0:
        return OrderVerdict(True)
    missing = set(L.alphabet) - pair.alphabet
    if missing:
        raise ValueError(f"letters {''.join(sorted(missing))!r} are not ordered by {pair}")
    ra, rd = pair.order_a.ranks, pair.order_d.ranks
    for w, edges in _bispecial_edges(L, maxlen):
        hit = _kernels.first_crossing([ra[x] for x, _ in edges], [rd[y] for _, y in edges])
        if hit is not None:
            return OrderVerdict(False, w, (edges[hit[0]], edges[hit[1]]))
    return OrderVerdict(True)


def order_pairs_satisfying(L: FactorialLanguage, maxlen: int | None = None, alphabet: str | None = None) -> set[OrderPair]:
    """Every pair of orders on ``alphabet`` (default: letters of L) satisfied by L."""
    if alphabet is None:
        alphabet = L.alphabet
    return {p for p in all_pairs(alphabet) if order_condition(L, p, maxlen)}


@dataclass(frozen=True)
class Connection:
    """``a w b`` and ``a' w b'`` occur but neither ``a w b'`` nor ``a' w b``."""

    word: str
    a: str
    a2: str
    b: str
    b2: str

    def __str__(self):
        w = self.word
        return f"{w!r}: {self.a}{w}{self.b}, {self.a2}{w}{self.b2} (missing {self.a}{w}{self.b2}, {self.a2}{w}{self.b})"


def connections(L: FactorialLanguage, pair: OrderPair, maxlen: int | None = None) -> list[Connection]:
    """Connections on bispecials of length ``<= maxlen``.

    Consecutive letters are taken among the observed extensions of each
    bispecial (its ordered extension graph).
    """
    if maxlen is None:
        maxlen = L.depth - 2
    verdict = order_condition(L, pair, maxlen)
    if not verdict:
        raise ValueError(f"connections need the order condition, which is {verdict.describe()}")
    found = []
    for w, _ in _bispecial_edges(L, maxlen):
        g = extension_graph(L, w, pair)
        for a, a2 in zip(g.left, g.left[1:]):
            for b, b2 in zip(g.right, g.right[1:]):
                if (a, b) in g.edges and (a2, b2) in g.edges and (a, b2) not in g.edges and (a2, b) not in g.edges:
                    found.append(Connection(w, a, a2, b, b2))
    return found


# -- return words -----------------------------------------------------------


def return_words(L: FactorialLanguage, w: str, kind: str = "suffix") -> set[str]:
    """Suffix (``w v`` ends with its second ``w``) or prefix return words of ``w``.

    The scan is over the materialized factors.  When some occurrence of ``w``
    reaches the depth without returning, languages coming from an interval
    exchange are answered by the first-return map instead; otherwise
    :class:`DepthExhausted` is raised.
    """
    _check_kind(kind)
    if w not in L:
        raise ValueError(f"{w!r} is not in the language")
    try:
        return _scan_returns(L, w, kind)
    except DepthExhausted:
        if L.iet is None:
            raise
    from .iet import induce

    full = induce(L.iet, w).full_returns().values()
    return {_strip(f, w, kind) for f in full}


def _check_kind(kind):
    if kind not in ("suffix", "prefix"):
        raise ValueError(f"kind must be 'suffix' or 'prefix', got {kind!r}")


def _strip(full, w, kind):
    return full[len(w):] if kind == "suffix" else full[:-len(w)]


def _scan_returns(L, w, kind):
    m = len(w)
    found = set()
    for n in range(m + 1, L.depth + 1):
        for u in L.factors(n):
            if u.startswith(w) and u.endswith(w) and len(occurrences(u, w)) == 2:
                found.add(_strip(u, w, kind))
    # frontier: a word of maximal length that starts (prefix kind: ends) with w
    # and holds no other occurrence has not returned yet
    for u in L.factors(L.depth):
        anchored = u.startswith(w) if kind == "suffix" else u.endswith(w)
        if anchored and len(occurrences(u, w)) == 1:
            raise DepthExhausted(
                f"depth exhausted before closure: {u!r} has no second occurrence of {w!r}"
            )
    return found


def full_return_words(L: FactorialLanguage, w: str, kind: str = "suffix") -> set[str]:
    returns = return_words(L, w, kind)
    return {w + v for v in returns} if kind == "suffix" else {v + w for v in returns}


@dataclass(frozen=True)
class RichnessVerdict:
    rich: bool
    palindrome: str | None = None
    full_return: str | None = None

    def __bool__(self):
        return self.rich


def richness_check(L: FactorialLanguage, maxlen: int) -> RichnessVerdict:
    """Check that every full return word to every palindrome of length ``<= maxlen`` is a palindrome."""
    if maxlen > L.depth // 2:
        raise InsufficientDepth(f"richness up to {maxlen} needs depth {2 * maxlen}, have {L.depth}")
    for n in range(1, maxlen + 1):
        for p in sorted(L.factors(n)):
            if not is_palindrome(p):
                continue
            for full in sorted(full_return_words(L, p)):
                if not is_palindrome(full):
                    return RichnessVerdict(False, p, full)
    return RichnessVerdict(True)


def palindromic_complexity(L: FactorialLanguage, n: int) -> int:
    return sum(1 for u in L.factors(n) if is_palindrome(u))


def factor_complexity(L: FactorialLanguage, n: int) -> int:
    return len(L.factors(n))


@dataclass(frozen=True)
class BispecialExtension:
    word: str | None
    reason: str | None = None

    def __bool__(self):
        return self.word is not None


def shortest_bispecial_extension(L: FactorialLanguage, v: str, cap: int = 32) -> BispecialExtension:
    """Close ``v`` under unique extensions until it becomes bispecial.

    While the current word is not right special it is extended by its unique
    right letter; once right special, while not left special, by its unique
    left letter.  Gives up (``word=None``) on a dead end, when ``cap``
    extension steps are used, or when the depth runs out.
    """
    if v not in L:
        raise ValueError(f"{v!r} is not in the language")
    u = v
    for _ in range(cap + 1):
        if len(u) + 1 > L.depth:
            return BispecialExtension(None, f"depth {L.depth} exhausted at {u!r}")
        left, right = extensions(L, u)
        if len(right) == 1:
            u = u + next(iter(right))
        elif len(right) == 0:
            return BispecialExtension(None, f"{u!r} has no right extension")
        elif len(left) == 1:
            u = next(iter(left)) + u
        elif len(left) == 0:
            return BispecialExtension(None, f"{u!r} has no left extension")
        else:
            return BispecialExtension(u)
    return BispecialExtension(None, f"cap of {cap} extension steps exceeded")


# -- JSON specs ---------------------------------------------------------------


def language_from_spec(spec: dict, base_dir: str | Path = ".", depth: int | None = None) -> FactorialLanguage:
    """Build a language from its JSON description.

    Recognized types: ``words`` (``{"words": [...], "closure_reversal": bool}``),
    ``power`` (``{"word": ...}``), ``biinfinite`` (``{"words": [{"left", "center",
    "right"}, ...]}``), ``iet`` (``{"iet": path or inline spec}``) and
    ``factors`` (a dump from :func:`language_to_spec`).
    """
    kind = spec.get("type")
    depth = depth or spec.get("depth")
    cap = max(DEFAULT_DEPTH_CAP, depth or 0)
    if kind == "words":
        words = list(spec["words"])
        if spec.get("closure_reversal"):
            words += [reverse(w) for w in words]
        return build_language(FiniteWords(words), depth or max(len(w) for w in words), cap=cap)
    if kind == "power":
        return build_language(PowerWord(spec["word"]), depth or 2 * len(spec["word"]) + 2, cap=cap)
    if kind == "biinfinite":
        source = BiInfinite(
            EventuallyPeriodicWord(b["left"], b.get("center", ""), b["right"]) for b in spec["words"]
        )
        return build_language(source, depth or 16, cap=cap)
    if kind == "iet":
        from .iet import load_iet, iet_from_spec

        ref = spec["iet"]
        T = iet_from_spec(ref) if isinstance(ref, dict) else load_iet(Path(base_dir) / ref)
        return build_language(IetCoding(T), depth or 16, cap=cap)
    if kind == "factors":
        levels = [set() for _ in range(spec["depth"] + 1)]
        levels[0].add("")
        for u in spec["words"]:
            levels[len(u)].add(u)
        L = FactorialLanguage(levels, source=Explicit(spec.get("description", "dump")),
                              extendable=spec.get("extendable", True))
        if not L.is_factor_closed():
            raise ValueError("dumped factor sets are not factor closed")
        return L
    raise ValueError(f"unknown language type {kind!r}")


def language_to_spec(L: FactorialLanguage, description: str | None = None) -> dict:
    return {
        "type": "factors",
        "depth": L.depth,
        "extendable": L.extendable,
        "description": description or getattr(L.source, "description", type(L.source).__name__),
        "words": [u for n in range(1, L.depth + 1) for u in sorted(L.factors(n))],
    }


def all_words(alphabet: str, n: int) -> list[str]:
    return ["".join(p) for p in product(alphabet, repeat=n)]


__all__ = [
    "BiInfinite", "BispecialExtension", "Connection", "DEFAULT_DEPTH_CAP", "DepthExhausted",
    "EventuallyPeriodicWord", "Explicit", "ExtensionGraph", "FactorialLanguage", "FiniteWords",
    "IetCoding", "InsufficientDepth", "OrderVerdict", "PowerWord", "RichnessVerdict",
    "all_words", "alphabet_of", "bispecials", "build_language", "connections", "extension_graph",
    "extensions", "factor_complexity", "finite_language", "full_return_words", "language_from_spec",
    "language_to_spec", "order_condition", "order_pairs_satisfying", "palindromic_complexity",
    "return_words", "richness_check", "shortest_bispecial_extension",
]
