"""Ground-truth language slices for differential testing.

``SliceOracle`` computes the exact set of words of bounded length in an
expression's language straight from the semantic equations -- set union,
intersection, and complement over enumerated words -- with no derivatives
involved, so it can serve as an independent referee for the engine.  The
complement of a bounded slice is sound because whether a word of length at
most N belongs to the language does not depend on any longer word.

Only small explicitly enumerated alphabets are supported; anything larger
explodes combinatorially and is rejected up front.
"""

from __future__ import annotations

from itertools import product

from .alphabet import BitsetAlgebra
from .syntax import And, Concat, Epsilon, Ere, ExprBuilder, Literal, Not, Star, Union

MAX_ALPHABET = 8
MAX_LENGTH = 10


class SliceOracle:
    """Memoizing slice computer for one builder and one length bound."""

    def __init__(self, builder: ExprBuilder, max_len: int):
        algebra = builder.algebra
        if not isinstance(algebra, BitsetAlgebra):
            raise ValueError("the slice oracle needs an enumerable bitset alphabet")
        if len(algebra.symbols) > MAX_ALPHABET:
            raise ValueError(f"alphabet too large for slicing (> {MAX_ALPHABET})")
        if not 0 <= max_len <= MAX_LENGTH:
            raise ValueError(f"slice bound must be between 0 and {MAX_LENGTH}")
        self.builder = builder
        self.algebra = algebra
        self.max_len = max_len
        self._memo: dict[int, frozenset[str]] = {}
        self._universe: frozenset[str] | None = None

    def all_words(self) -> frozenset[str]:
        """Every word over the alphabet up to the length bound."""
        if self._universe is None:
            syms = self.algebra.symbols
            self._universe = frozenset(
                "".join(w)
                for n in range(self.max_len + 1)
                for w in product(syms, repeat=n)
            )
        return self._universe

    def slice(self, r: Ere) -> frozenset[str]:
        out = self._memo.get(r.eid)
        if out is None:
            out = self._slice(r)
            self._memo[r.eid] = out
        return out

    def _slice(self, r: Ere) -> frozenset[str]:
        n = self.max_len
        if isinstance(r, Epsilon):
            return frozenset(("",))
        if isinstance(r, Literal):
            return frozenset(self.algebra.members(r.symbols)) if n >= 1 else frozenset()
        if isinstance(r, Union):
            return frozenset().union(*(self.slice(m) for m in r.members))
        if isinstance(r, And):
            out = self.slice(r.members[0])
            for m in r.members[1:]:
                out &= self.slice(m)
            return out
        if isinstance(r, Not):
            return self.all_words() - self.slice(r.inner)
        if isinstance(r, Concat):
            left, right = self.slice(r.head), self.slice(r.tail)
            return frozenset(
                u + v for u in left for v in right if len(u) + len(v) <= n
            )
        if isinstance(r, Star):
            base = self.slice(r.inner)
            words = {""}
            frontier = {""}
            while frontier:
                grown = set()
                for u in frontier:
                    for v in base:
                        if v and len(u) + len(v) <= n:
                            w = u + v
                            if w not in words:
                                words.add(w)
                                grown.add(w)
                frontier = grown
            return frozenset(words)
        raise TypeError(r)

    def subset(self, r: Ere, s: Ere) -> bool:
        return self.slice(r) <= self.slice(s)

    def equal(self, r: Ere, s: Ere) -> bool:
        return self.slice(r) == self.slice(s)


def slice_words(builder: ExprBuilder, r: Ere, max_len: int) -> frozenset[str]:
    return SliceOracle(builder, max_len).slice(r)


def slice_subset(builder: ExprBuilder, r: Ere, s: Ere, max_len: int) -> bool:
    return SliceOracle(builder, max_len).subset(r, s)


def slice_equal(builder: ExprBuilder, r: Ere, s: Ere, max_len: int) -> bool:
    return SliceOracle(builder, max_len).equal(r, s)
