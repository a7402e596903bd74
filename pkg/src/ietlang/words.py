"""Ordered alphabets, elementary word operations and Burrows-Wheeler clustering.

Words are plain ``str`` objects whose characters are the letters.  An order on
an alphabet is written as the string of its letters in ascending order, so
``"321"`` means ``3 < 2 < 1``; a pair of orders is written ``"orderA|orderD"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator

from . import _kernels

MAX_ENUMERATION_ALPHABET = 6


@dataclass(frozen=True)
class TotalOrder:
    """A strict total order on a finite alphabet, stored as its ascending letters."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("an order needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in order {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> "TotalOrder":
        return cls(text.strip())

    @cached_property
    def ranks(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.letters)}

    @property
    def alphabet(self) -> frozenset[str]:
        return frozenset(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self.ranks

    def __str__(self):
        return self.letters

    def rank(self, letter: str) -> int:
        try:
            return self.ranks[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} is not in the order {self.letters!r}") from None

    def less(self, x: str, y: str) -> bool:
        return self.rank(x) < self.rank(y)

    def reversed(self) -> "TotalOrder":
        return TotalOrder(self.letters[::-1])

    def restrict(self, letters: Iterable[str]) -> "TotalOrder":
        keep = set(letters)
        return TotalOrder("".join(x for x in self.letters if x in keep))

    def sort(self, letters: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(letters, key=self.rank))


@dataclass(frozen=True)
class OrderPair:
    """The pair ``(<_A, <_D)``: image order and defining order on one alphabet."""

    order_a: TotalOrder
    order_d: TotalOrder

    def __post_init__(self):
        if self.order_a.alphabet != self.order_d.alphabet:
            raise ValueError(
                f"orders {self.order_a} and {self.order_d} are on different alphabets"
            )

    @classmethod
    def parse(cls, text: str) -> "OrderPair":
        try:
            a, d = text.split("|")
        except ValueError:
            raise ValueError(f"a pair of orders is written 'orderA|orderD', got {text!r}") from None
        return cls(TotalOrder.parse(a), TotalOrder.parse(d))

    def __str__(self):
        return f"{self.order_a}|{self.order_d}"

    @property
    def alphabet(self) -> frozenset[str]:
        return self.order_d.alphabet

    @property
    def is_symmetric(self) -> bool:
        return self.order_a.letters == self.order_d.letters[::-1]

    def reversed(self) -> "OrderPair":
        """Both orders reversed; satisfies exactly the same order conditions."""
        return OrderPair(self.order_a.reversed(), self.order_d.reversed())

    def restrict(self, letters: Iterable[str]) -> "OrderPair":
        letters = set(letters)
        return OrderPair(self.order_a.restrict(letters), self.order_d.restrict(letters))


def alphabet_of(words: Iterable[str]) -> str:
    """Sorted string of the letters occurring in ``words``."""
    return "".join(sorted(set("".join(words))))


def all_orders(alphabet: str) -> Iterator[TotalOrder]:
    for p in permutations(alphabet):
        yield TotalOrder("".join(p))


def all_pairs(alphabet: str) -> Iterator[OrderPair]:
    """Every pair of orders on ``alphabet`` (``r!**2`` of them)."""
    _check_enumerable(alphabet)
    orders = list(all_orders(alphabet))
    for a in orders:
        for d in orders:
            yield OrderPair(a, d)


def symmetric_pairs(alphabet: str) -> Iterator[OrderPair]:
    _check_enumerable(alphabet)
    for d in all_orders(alphabet):
        yield OrderPair(d.reversed(), d)


def _check_enumerable(alphabet):
    if len(alphabet) > MAX_ENUMERATION_ALPHABET:
        raise ValueError(
            f"enumeration too large: alphabet of size {len(alphabet)} > {MAX_ENUMERATION_ALPHABET}"
        )


def reverse(w: str) -> str:
    return w[::-1]


def is_palindrome(w: str) -> bool:
    return w == w[::-1]


def is_primitive(w: str) -> bool:
    """True iff ``w`` is not a proper power of a shorter word."""
    if not w:
        raise ValueError("primitivity is undefined on empty word")
    n = len(w)
    return all(n % d or w[:d] * (n // d) != w for d in range(1, n))


def occurrences(w: str, pattern: str) -> list[int]:
    """Start indices of all (possibly overlapping) occurrences of ``pattern`` in ``w``."""
    if not pattern:
        return list(range(len(w) + 1))
    found = []
    i = w.find(pattern)
    while i >= 0:
        found.append(i)
        i = w.find(pattern, i + 1)
    return found


def encode(w: str, order: TotalOrder) -> list[int]:
    ranks = order.ranks
    try:
        return [ranks[x] for x in w]
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]!r} of {w!r} is not in the order {order}") from None


def bwt(w: str, order: TotalOrder) -> str:
    """Burrows-Wheeler transform: last letters of the sorted cyclic conjugates.

    Rotations are sorted non-strictly, so a power ``v**m`` keeps all its
    repeated conjugates.

    >>> bwt("1312", TotalOrder("123"))
    '3211'
    """
    if not w:
        raise ValueError("the Burrows-Wheeler transform is undefined on empty word")
    codes = encode(w, order)
    return "".join(order.letters[c] for c in _kernels.bwt_codes(codes))


def _check_pair_alphabet(w, pair):
    extra = set(w) - pair.alphabet
    if extra:
        raise ValueError(f"letters {''.join(sorted(extra))!r} of {w!r} are not in the pair {pair}")


def clusters_for(w: str, pair: OrderPair) -> bool:
    """True iff ``w`` clusters for ``pair``.

    The transform is taken for ``<_D``; it must consist of one block per
    occurring letter, the blocks in ``<_A``-increasing order.
    """
    if not w:
        raise ValueError("clustering is undefined on empty word")
    _check_pair_alphabet(w, pair)
    codes = encode(w, pair.order_d)
    a_of_d = [pair.order_a.rank(x) for x in pair.order_d.letters]
    return _kernels.clusters_codes(codes, a_of_d)


def clustering_pairs(w: str, alphabet: str | None = None) -> set[OrderPair]:
    """All pairs of orders on ``alphabet`` (default: letters of ``w``) for which ``w`` clusters."""
    if alphabet is None:
        alphabet = alphabet_of(w)
    _check_enumerable(alphabet)
    found = set()
    for d in all_orders(alphabet):
        # the transform only depends on <_D
        last = bwt(w, d)
        for a in all_orders(alphabet):
            if _is_grouped(last, a):
                found.add(OrderPair(a, d))
    return found


def _is_grouped(last, order_a):
    ranks = [order_a.rank(x) for x in last]
    return all(p <= q for p, q in zip(ranks, ranks[1:]))


def is_perfectly_clustering(w: str, order_d: TotalOrder) -> bool:
    return clusters_for(w, OrderPair(order_d.reversed(), order_d))
