"""Return-word morphisms, derived orders and derived words."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Mapping, Sequence

from .language import OrderVerdict, finite_language, order_condition
from .words import OrderPair, TotalOrder, occurrences

DEFAULT_LABELS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Morphism:
    """``a_i -> U_i``; images are nonempty and pairwise distinct."""

    images: tuple[tuple[str, str], ...]

    def __init__(self, images: Mapping[str, str] | Sequence[tuple[str, str]]):
        items = tuple(images.items()) if isinstance(images, Mapping) else tuple(images)
        letters = [a for a, _ in items]
        if len(set(letters)) != len(letters):
            raise ValueError("a morphism letter is mapped twice")
        if any(len(a) != 1 for a in letters):
            raise ValueError("morphism letters must be single characters")
        if any(not u for _, u in items):
            raise ValueError("morphism images must be nonempty")
        if len({u for _, u in items}) != len(items):
            raise ValueError("morphism images must be pairwise distinct")
        object.__setattr__(self, "images", items)

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """``"a=12,b=1312,c=212"``."""
        items = []
        for chunk in text.split(","):
            a, sep, u = chunk.strip().partition("=")
            if not sep:
                raise ValueError(f"morphism entries look like 'a=12', got {chunk!r}")
            items.append((a.strip(), u.strip()))
        return cls(items)

    def __str__(self):
        return ",".join(f"{a}={u}" for a, u in self.images)

    @property
    def alphabet(self) -> str:
        return "".join(a for a, _ in self.images)

    def __getitem__(self, a: str) -> str:
        for b, u in self.images:
            if a == b:
                return u
        raise KeyError(a)

    def as_dict(self) -> dict[str, str]:
        return dict(self.images)

    def __call__(self, v: str) -> str:
        return apply_morphism(self, v)


def apply_morphism(phi: Morphism, v: str) -> str:
    table = phi.as_dict()
    try:
        return "".join(table[a] for a in v)
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]!r} is not in the morphism's alphabet {phi.alphabet!r}") from None


@dataclass(frozen=True)
class DerivedOrderResult:
    """Derived pair on the return alphabet plus the comparison positions.

    ``indices[(a, b)] = (t, u)``: ``t`` is the 1-based position, from the
    left, of the first difference between ``φa·w`` and ``φb·w``; ``u`` the
    1-based position, from the right, of the last difference between
    ``w·φa`` and ``w·φb``.
    """

    pair: OrderPair
    morphism: Morphism
    indices: dict[tuple[str, str], tuple[int, int]]


def _first_difference(s: str, t: str) -> int | None:
    for k, (x, y) in enumerate(zip(s, t)):
        if x != y:
            return k
    return None


def validate_return_word(w: str, v: str, kind: str = "suffix") -> None:
    """Raise unless ``v`` is a return word of ``w`` of the given kind."""
    if kind not in ("suffix", "prefix"):
        raise ValueError(f"kind must be 'suffix' or 'prefix', got {kind!r}")
    if not v:
        raise ValueError("not a return word: return words are nonempty")
    full = w + v if kind == "suffix" else v + w
    occ = occurrences(full, w)
    if len(occ) != 2 or occ[0] != 0 or occ[-1] != len(full) - len(w):
        extra = [i + 1 for i in occ if i not in (0, len(full) - len(w))]
        where = f"extra occurrence of {w!r} at position {extra[0]}" if extra else f"{w!r} is not at both ends"
        raise ValueError(f"not a return word: {full!r} ({where})")


def derived_orders(
    w: str,
    returns: Sequence[str] | Mapping[str, str],
    pair: OrderPair,
    kind: str = "suffix",
    labels: str = DEFAULT_LABELS,
) -> DerivedOrderResult:
    """Orders on the return alphabet induced by ``pair``.

    ``<_Dw`` compares ``φa·w`` lexicographically under ``<_D`` and ``<_Aw``
    compares ``w·φa`` antilexicographically (from the right) under ``<_A``.
    The same comparisons serve prefix return words: both sides then read the
    full return word shifted by one occurrence of ``w``.

    >>> r = derived_orders("12", ["12", "1312", "212"], OrderPair.parse("321|123"))
    >>> str(r.pair)
    'bca|abc'
    """
    if isinstance(returns, Mapping):
        phi = Morphism(returns)
    else:
        returns = list(returns)
        if len(returns) > len(labels):
            raise ValueError("not enough labels for the return words")
        phi = Morphism(list(zip(labels, returns)))
    for _, v in phi.images:
        validate_return_word(w, v, kind)
    rd, ra = pair.order_d.rank, pair.order_a.rank

    indices: dict[tuple[str, str], tuple[int, int]] = {}
    letters = phi.alphabet
    for i, a in enumerate(letters):
        for b in letters[i + 1:]:
            left_a, left_b = phi[a] + w, phi[b] + w
            t = _first_difference(left_a, left_b)
            right_a, right_b = (w + phi[a])[::-1], (w + phi[b])[::-1]
            u = _first_difference(right_a, right_b)
            if t is None or u is None:
                raise ValueError(f"comparison index missing between {a}={phi[a]} and {b}={phi[b]}")
            indices[(a, b)] = (t + 1, u + 1)

    def cmp_d(a, b):
        if a == b:
            return 0
        sa, sb = phi[a] + w, phi[b] + w
        k = _first_difference(sa, sb)
        return -1 if rd(sa[k]) < rd(sb[k]) else 1

    def cmp_a(a, b):
        if a == b:
            return 0
        sa, sb = (w + phi[a])[::-1], (w + phi[b])[::-1]
        k = _first_difference(sa, sb)
        return -1 if ra(sa[k]) < ra(sb[k]) else 1

    order_d = "".join(sorted(letters, key=cmp_to_key(cmp_d)))
    order_a = "".join(sorted(letters, key=cmp_to_key(cmp_a)))
    return DerivedOrderResult(OrderPair(TotalOrder(order_a), TotalOrder(order_d)), phi, indices)


def derive_word(x: str, w: str, phi: Morphism | None = None, kind: str = "suffix") -> str:
    """Labels of the returns to ``w`` read along ``x``.

    ``x`` must start and end with an occurrence of ``w``; it is cut at every
    occurrence.  Without ``phi`` the return words get fresh labels in order of
    first appearance.
    """
    if kind not in ("suffix", "prefix"):
        raise ValueError(f"kind must be 'suffix' or 'prefix', got {kind!r}")
    occ = occurrences(x, w)
    if not occ or occ[0] != 0:
        raise ValueError(f"{x!r} does not start with {w!r}")
    if occ[-1] != len(x) - len(w):
        raise ValueError(f"{x!r} does not end with {w!r} (last occurrence at position {occ[-1] + 1})")
    table = {u: a for a, u in phi.images} if phi is not None else {}
    fresh = iter(DEFAULT_LABELS)
    out = []
    for i, j in zip(occ, occ[1:]):
        piece = x[i + len(w):j + len(w)] if kind == "suffix" else x[i:j]
        if piece not in table:
            if phi is not None:
                raise ValueError(f"return word {piece!r} at position {i + 1} is not an image of {phi}")
            table[piece] = next(fresh)
        out.append(table[piece])
    return "".join(out)


def transfer_order_condition(
    w: str, phi: Morphism, pair: OrderPair, v: str, kind: str = "suffix"
) -> tuple[OrderVerdict, OrderVerdict]:
    """Order condition of ``F(w·φv)`` (prefix kind: ``F(φv·w)``) for ``pair``
    next to that of ``F(v)`` for the derived pair; the two always agree."""
    derived = derived_orders(w, phi.as_dict(), pair, kind).pair
    image = w + apply_morphism(phi, v) if kind == "suffix" else apply_morphism(phi, v) + w
    big = order_condition(finite_language([image]), pair)
    small = order_condition(finite_language([v]), derived) if v else OrderVerdict(True)
    return big, small
