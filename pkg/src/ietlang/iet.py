"""Exact interval exchange transformations with increasing piecewise-affine branches.

All arithmetic is done with :class:`fractions.Fraction`.  Intervals are
half-open ``[left, right)``; a point on a boundary belongs to the interval on
its right.  The defining intervals tile the domain in ``<_D`` order and their
images tile it in ``<_A`` order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .words import OrderPair, TotalOrder


def rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass 'p/q' strings or Fractions")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class Interval:
    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", rational(self.left))
        object.__setattr__(self, "right", rational(self.right))
        if self.left > self.right:
            raise ValueError(f"interval [{self.left}, {self.right}) has left > right")

    @property
    def empty(self) -> bool:
        return self.left == self.right

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def __contains__(self, x) -> bool:
        return self.left <= x < self.right

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.left, other.left), min(self.right, other.right)
        return Interval(lo, hi) if lo < hi else Interval(lo, lo)

    def issubset(self, other: "Interval") -> bool:
        return self.empty or (other.left <= self.left and self.right <= other.right)

    def __str__(self):
        return f"[{rational_str(self.left)}, {rational_str(self.right)})"

    def to_spec(self) -> list[str]:
        return [rational_str(self.left), rational_str(self.right)]


UNIT = Interval(0, 1)


@dataclass(frozen=True)
class AffinePiece:
    """``x -> slope * x + offset`` on ``source``; always increasing."""

    source: Interval
    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", rational(self.slope))
        object.__setattr__(self, "offset", rational(self.offset))
        if self.slope <= 0:
            raise ValueError("branches must be increasing (flips are not supported)")

    def value(self, x) -> Fraction:
        return self.slope * x + self.offset

    def preimage(self, y) -> Fraction:
        return (y - self.offset) / self.slope

    @property
    def image(self) -> Interval:
        return Interval(self.value(self.source.left), self.value(self.source.right))

    def cut(self, lo, hi) -> "AffinePiece":
        return AffinePiece(Interval(lo, hi), self.slope, self.offset)


class PiecewiseAffineIet:
    """A generalized interval exchange whose branches are piecewise affine.

    ``defining[e]`` is the interval coded by letter ``e`` and ``branches[e]``
    the list of affine pieces tiling it.  A letter may have an empty defining
    interval, in which case it has no pieces.
    """

    def __init__(
        self,
        pair: OrderPair,
        defining: Mapping[str, Interval],
        branches: Mapping[str, Sequence[AffinePiece]],
        domain: Interval = UNIT,
    ):
        self.pair = pair
        self.domain = domain
        self.defining = {e: defining[e] for e in pair.order_d}
        self.branches = {e: tuple(branches.get(e, ())) for e in pair.order_d}
        self.images = self._check()

    def _check(self) -> dict[str, Interval]:
        if set(self.defining) != set(self.pair.alphabet):
            raise ValueError("defining intervals must be given for exactly the pair's alphabet")
        cur = self.domain.left
        for e in self.pair.order_d:
            I = self.defining[e]
            if I.left != cur:
                raise ValueError(f"defining intervals do not tile the domain in <_D order at letter {e!r}")
            cur = I.right
        if cur != self.domain.right:
            raise ValueError("defining intervals do not cover the domain")
        images = {}
        for e, I in self.defining.items():
            pieces = self.branches[e]
            if I.empty:
                if pieces:
                    raise ValueError(f"letter {e!r} has an empty interval but affine pieces")
                images[e] = None
                continue
            if not pieces or pieces[0].source.left != I.left or pieces[-1].source.right != I.right:
                raise ValueError(f"the pieces of letter {e!r} do not tile its defining interval")
            for p, q in zip(pieces, pieces[1:]):
                if p.source.right != q.source.left:
                    raise ValueError(f"the pieces of letter {e!r} are not contiguous")
                if p.value(p.source.right) != q.value(q.source.left):
                    raise ValueError(f"the branch of letter {e!r} is discontinuous at {p.source.right}")
            images[e] = Interval(pieces[0].value(I.left), pieces[-1].value(I.right))
        cur = self.domain.left
        for e in self.pair.order_a:
            if images[e] is None:
                images[e] = Interval(cur, cur)
            if images[e].left != cur:
                raise ValueError(f"image intervals do not tile the domain in <_A order at letter {e!r}")
            cur = images[e].right
        if cur != self.domain.right:
            raise ValueError("image intervals do not cover the domain")
        return images

    def __repr__(self):
        kind = "standard" if self.is_standard else "affine"
        return f"<{kind} IET {self.pair} on {self.domain}>"

    @property
    def alphabet(self) -> str:
        """Letters in ``<_D`` order."""
        return self.pair.order_d.letters

    @property
    def is_standard(self) -> bool:
        return all(len(ps) <= 1 and all(p.slope == 1 for p in ps) for ps in self.branches.values())

    @property
    def is_symmetric(self) -> bool:
        return self.pair.is_symmetric

    @property
    def lengths(self) -> dict[str, Fraction]:
        return {e: I.length for e, I in self.defining.items()}

    def letter_at(self, x) -> str:
        for e, I in self.defining.items():
            if x in I:
                return e
        raise ValueError(f"point {x} is outside the domain {self.domain}")

    def branch_value(self, e: str, x) -> Fraction:
        """Value of branch ``e`` at ``x``; the right endpoint is allowed (by continuity)."""
        pieces = self.branches[e]
        if x == self.defining[e].right:
            return pieces[-1].value(x)
        for p in pieces:
            if x in p.source:
                return p.value(x)
        raise ValueError(f"{x} is not in the defining interval of {e!r}")

    def branch_preimage(self, e: str, y) -> Fraction:
        """Inverse of branch ``e`` on the closed image interval."""
        pieces = self.branches[e]
        if y == self.images[e].right:
            return self.defining[e].right
        for p in pieces:
            if y in p.image:
                return p.preimage(y)
        raise ValueError(f"{y} is not in the image of {e!r}")

    def forward(self, x) -> Fraction:
        x = rational(x)
        return self.branch_value(self.letter_at(x), x)

    def inverse(self, y) -> Fraction:
        y = rational(y)
        for e, J in self.images.items():
            if y in J:
                return self.branch_preimage(e, y)
        raise ValueError(f"point {y} is outside the domain {self.domain}")

    def pull_back(self, e: str, J: Interval) -> Interval:
        """``{x in I_e : T x in J}``."""
        if self.defining[e].empty:
            return Interval(self.defining[e].left, self.defining[e].left)
        K = J.intersect(self.images[e])
        if K.empty:
            return Interval(self.defining[e].left, self.defining[e].left)
        return Interval(self.branch_preimage(e, K.left), self.branch_preimage(e, K.right))

    def push_forward(self, e: str, K: Interval) -> Interval:
        """``T(K)`` for a subinterval ``K`` of ``I_e``."""
        return Interval(self.branch_value(e, K.left), self.branch_value(e, K.right))

    def itinerary(self, x, n: int) -> str:
        x = rational(x)
        letters = []
        for _ in range(n):
            e = self.letter_at(x)
            letters.append(e)
            x = self.branch_value(e, x)
        return "".join(letters)


def apply_point(T: PiecewiseAffineIet, x, direction: str = "forward") -> Fraction:
    if direction == "forward":
        return T.forward(x)
    if direction == "inverse":
        return T.inverse(x)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def make_standard(pair: OrderPair, lengths) -> PiecewiseAffineIet:
    """Standard IET with the given interval lengths.

    ``lengths`` is a mapping letter -> length or a sequence aligned with the
    ``<_D`` order (left to right).  Lengths must be positive and sum to 1.

    >>> T = make_standard(OrderPair.parse("21|12"), ["1/3", "2/3"])
    >>> T.forward(0)
    Fraction(2, 3)
    """
    if isinstance(lengths, Mapping):
        lam = {e: rational(lengths[e]) for e in pair.order_d}
    else:
        lengths = list(lengths)
        if len(lengths) != len(pair.order_d):
            raise ValueError("one length per letter is needed")
        lam = {e: rational(v) for e, v in zip(pair.order_d, lengths)}
    if any(v <= 0 for v in lam.values()):
        raise ValueError("lengths must be positive")
    if sum(lam.values()) != 1:
        raise ValueError(f"lengths sum to {sum(lam.values())}, not 1")
    defining, starts, cur = {}, {}, Fraction(0)
    for e in pair.order_d:
        defining[e] = Interval(cur, cur + lam[e])
        cur += lam[e]
    cur = Fraction(0)
    for e in pair.order_a:
        starts[e] = cur
        cur += lam[e]
    branches = {e: [AffinePiece(defining[e], 1, starts[e] - defining[e].left)] for e in pair.order_d}
    return PiecewiseAffineIet(pair, defining, branches)


def cylinder(T: PiecewiseAffineIet, w: str) -> Interval:
    """The interval of points whose itinerary starts with ``w`` (possibly empty)."""
    if not w:
        return T.domain
    J = T.defining[w[-1]]
    for e in reversed(w[:-1]):
        if J.empty:
            return J
        J = T.pull_back(e, J)
    return J


def _coding_levels(T, n):
    levels = [{""}]
    cyl = {"": T.domain}
    top = {e: T.defining[e] for e in T.alphabet if not T.defining[e].empty}
    levels.append(set(top))
    cyl = top
    for _ in range(2, n + 1):
        nxt = {}
        for w, J in cyl.items():
            for x in T.alphabet:
                K = T.pull_back(x, J)
                if not K.empty:
                    nxt[x + w] = K
        cyl = nxt
        levels.append(set(nxt))
    return levels, cyl


def coding_factors(T: PiecewiseAffineIet, n: int) -> list[set[str]]:
    """Words of length ``0..n`` of the natural coding (those with a nonempty cylinder)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _coding_levels(T, n)[0]


# -- first return maps --------------------------------------------------------


class InductionError(RuntimeError):
    def __init__(self, message, surviving=()):
        super().__init__(message)
        self.surviving = list(surviving)


class _Branch:
    """Increasing continuous piecewise-affine map, kept as a list of pieces."""

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        self.pieces = list(pieces)

    @classmethod
    def identity(cls, J):
        return cls([AffinePiece(J, 1, 0)])

    @property
    def source(self):
        return Interval(self.pieces[0].source.left, self.pieces[-1].source.right)

    @property
    def image(self):
        return Interval(self.pieces[0].value(self.pieces[0].source.left),
                        self.pieces[-1].value(self.pieces[-1].source.right))

    def preimage(self, y):
        last = self.pieces[-1]
        if y == last.value(last.source.right):
            return last.source.right
        for p in self.pieces:
            if y in p.image:
                return p.preimage(y)
        raise ValueError(f"{y} is outside the image {self.image}")

    def restrict_image(self, K):
        lo, hi = self.preimage(K.left), self.preimage(K.right)
        kept = []
        for p in self.pieces:
            a, b = max(lo, p.source.left), min(hi, p.source.right)
            if a < b:
                kept.append(p.cut(a, b))
        return _Branch(kept)

    def then(self, T, e):
        """Post-compose with the branch of ``T`` for letter ``e``."""
        composed = []
        for p in self.pieces:
            img = p.image
            for q in T.branches[e]:
                ov = img.intersect(q.source)
                if ov.empty:
                    continue
                composed.append(AffinePiece(
                    Interval(p.preimage(ov.left), p.preimage(ov.right)),
                    q.slope * p.slope,
                    q.slope * p.offset + q.offset,
                ))
        return _Branch(composed)

    def merged(self):
        out = []
        for p in self.pieces:
            if out and out[-1].slope == p.slope and out[-1].offset == p.offset:
                out[-1] = out[-1].cut(out[-1].source.left, p.source.right)
            else:
                out.append(p)
        return _Branch(out)


DEFAULT_LABELS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class InducedResult:
    """First-return map on a cylinder, over a fresh alphabet.

    ``return_words[label]`` is the suffix return word ``U`` of the defining
    interval ``label``; its points follow ``w U`` before coming back.
    """

    iet: PiecewiseAffineIet
    word: str
    return_words: dict[str, str]
    cylinder: Interval

    @property
    def prefix_returns(self) -> dict[str, str]:
        """Prefix return words ``V`` with ``V w == w U`` for each label."""
        return {a: (self.word + u)[:len(u)] for a, u in self.return_words.items()}

    def full_returns(self) -> dict[str, str]:
        return {a: self.word + u for a, u in self.return_words.items()}


def induce(T: PiecewiseAffineIet, w: str, cap: int = 10_000, labels: str = DEFAULT_LABELS) -> InducedResult:
    """Induced map of ``T`` on the cylinder ``[w]``.

    Subintervals of ``[w]`` are pushed forward one letter at a time, split at
    the defining intervals and at the ends of ``[w]``; a piece stops when it
    lands back in ``[w]``.  Points sharing a return word form one defining
    interval of the induced map.
    """
    J = cylinder(T, w)
    if J.empty:
        raise ValueError(f"the cylinder of {w!r} is empty")
    work = [(_Branch.identity(J), "")]
    finished = []
    for _ in range(cap):
        if not work:
            break
        nxt = []
        for br, u in work:
            Q = br.image
            for e in T.alphabet:
                K = Q.intersect(T.defining[e])
                if K.empty:
                    continue
                moved = br.restrict_image(K).then(T, e)
                path = u + e
                Q2 = moved.image
                inside = Q2.intersect(J)
                if not inside.empty:
                    finished.append((moved.restrict_image(inside), path))
                for lo, hi in ((Q2.left, min(Q2.right, J.left)), (max(Q2.left, J.right), Q2.right)):
                    if lo < hi:
                        nxt.append((moved.restrict_image(Interval(lo, hi)), path))
        work = nxt
    if work:
        raise InductionError(
            f"no first return to [{w}] within {cap} steps", [br.source for br, _ in work]
        )

    by_return: dict[str, list[_Branch]] = {}
    for br, path in finished:
        by_return.setdefault((path + w)[len(w):], []).append(br)
    parts = []
    for ret, brs in by_return.items():
        brs.sort(key=lambda b: b.source.left)
        pieces = []
        for a, b in zip(brs, brs[1:]):
            if a.source.right != b.source.left:
                raise InductionError(f"points returning along {ret!r} do not form an interval")
        for b in brs:
            pieces.extend(b.pieces)
        parts.append((ret, _Branch(pieces).merged()))
    parts.sort(key=lambda item: item[1].source.left)
    if len(parts) > len(labels):
        raise InductionError(f"{len(parts)} return words exceed the {len(labels)} available labels")
    names = labels[:len(parts)]
    defining = {a: br.source for a, (_, br) in zip(names, parts)}
    branches = {a: br.pieces for a, (_, br) in zip(names, parts)}
    order_a = "".join(sorted(names, key=lambda a: branches[a][0].value(defining[a].left)))
    pair = OrderPair(TotalOrder(order_a), TotalOrder(names))
    induced = PiecewiseAffineIet(pair, defining, branches, domain=J)
    return InducedResult(induced, w, {a: ret for a, (ret, _) in zip(names, parts)}, J)


def is_symmetric_iet(T: PiecewiseAffineIet) -> bool:
    return T.pair.is_symmetric


def detect_connection(T: PiecewiseAffineIet, depth: int):
    """Connections of the natural coding on bispecials of length ``<= depth - 2``."""
    from .language import IetCoding, build_language, connections

    L = build_language(IetCoding(T), depth, cap=max(depth, 64))
    return connections(L, T.pair, depth - 2)


# -- JSON specs ---------------------------------------------------------------


def iet_to_spec(T: PiecewiseAffineIet) -> dict:
    if T.is_standard and T.domain == UNIT and all(not I.empty for I in T.defining.values()):
        return {
            "type": "standard",
            "pair": str(T.pair),
            "lengths": [rational_str(T.defining[e].length) for e in T.alphabet],
        }
    return {
        "type": "affine",
        "pair": str(T.pair),
        "domain": T.domain.to_spec(),
        "branches": [
            {
                "letter": e,
                "source": T.defining[e].to_spec(),
                "pieces": [
                    {"src": p.source.to_spec(), "slope": rational_str(p.slope), "offset": rational_str(p.offset)}
                    for p in T.branches[e]
                ],
            }
            for e in T.alphabet
        ],
    }


def iet_from_spec(spec: dict) -> PiecewiseAffineIet:
    pair = OrderPair.parse(spec["pair"])
    kind = spec.get("type")
    if kind == "standard":
        return make_standard(pair, spec["lengths"])
    if kind == "affine":
        defining, branches = {}, {}
        for b in spec["branches"]:
            e = b["letter"]
            defining[e] = Interval(*map(rational, b["source"]))
            branches[e] = [
                AffinePiece(Interval(*map(rational, p["src"])), rational(p["slope"]), rational(p["offset"]))
                for p in b.get("pieces", ())
            ]
        domain = Interval(*map(rational, spec.get("domain", ["0", "1"])))
        return PiecewiseAffineIet(pair, defining, branches, domain)
    raise ValueError(f"unknown IET type {kind!r}")


def load_iet(path) -> PiecewiseAffineIet:
    return iet_from_spec(json.loads(Path(path).read_text()))


def dump_iet(T: PiecewiseAffineIet, path) -> None:
    Path(path).write_text(json.dumps(iet_to_spec(T), indent=2) + "\n")


def induced_to_spec(result: InducedResult) -> dict:
    return {
        "word": result.word,
        "cylinder": result.cylinder.to_spec(),
        "returns": dict(result.return_words),
        "iet": iet_to_spec(result.iet),
    }


def standard_from_integers(pair: OrderPair, parts: Iterable[int]) -> PiecewiseAffineIet:
    parts = list(parts)
    q = sum(parts)
    return make_standard(pair, [Fraction(p, q) for p in parts])
