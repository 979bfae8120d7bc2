"""Regex-valued symbol sets: an algebra whose symbols are words.

Useful when the alphabet is itself a language -- e.g. object field names --
and a "character class" is a regular expression over an inner alphabet.
Set operations map to the inner expression operators, and the decidable
questions (emptiness, equality, membership) are answered by the engine's
own checker running over the inner bitset alphabet, so the layering is
strictly acyclic.

Outer words over this algebra are tuples of inner words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .alphabet import Algebra, AlgebraError, BitsetAlgebra, SymbolSet, escape_char
from .containment import Checker, FuelExhausted, shortest_word
from .syntax import Ere, ExprBuilder, to_text


@dataclass(frozen=True)
class RegexSet(SymbolSet):
    algebra: "RegexAlgebra"
    expr: Ere  # interned in the algebra's inner builder; equality is identity


class RegexAlgebra(Algebra):
    """Sets of inner-alphabet words, represented as inner expressions.

    Unlike the character algebras, representations are not canonical per
    denotation; equality and emptiness are decided semantically by the
    inner containment checker (and memoized).
    """

    def __init__(self, inner_symbols: str):
        self.inner = ExprBuilder(BitsetAlgebra(inner_symbols))
        self._checker = Checker(self.inner)
        self._empty: dict[int, bool] = {}
        self._witness: dict[int, str] = {}

    def set_of(self, text: str) -> RegexSet:
        """Build a set from inner concrete syntax, e.g. ``"a(a|b)*"``."""
        return RegexSet(self, self.inner.parse(text))

    def bottom(self) -> RegexSet:
        return RegexSet(self, self.inner.bottom())

    def top(self) -> RegexSet:
        return RegexSet(self, self.inner.sigma_star())

    def union(self, a: RegexSet, b: RegexSet) -> RegexSet:
        self._own(a, b)
        return RegexSet(self, self.inner.union(a.expr, b.expr))

    def intersect(self, a: RegexSet, b: RegexSet) -> RegexSet:
        self._own(a, b)
        return RegexSet(self, self.inner.and_(a.expr, b.expr))

    def complement(self, a: RegexSet) -> RegexSet:
        self._own(a)
        return RegexSet(self, self.inner.not_(a.expr))

    def is_empty(self, a: RegexSet) -> bool:
        self._own(a)
        out = self._empty.get(a.expr.eid)
        if out is None:
            out = self._decide(a.expr, self.inner.bottom())
            self._empty[a.expr.eid] = out
        return out

    def is_equal(self, a: RegexSet, b: RegexSet) -> bool:
        self._own(a, b)
        if a.expr is b.expr:
            return True
        return self._decide(a.expr, b.expr) and self._decide(b.expr, a.expr)

    def is_subset(self, a: RegexSet, b: RegexSet) -> bool:
        self._own(a, b)
        return self._decide(a.expr, b.expr)

    def _decide(self, lhs: Ere, rhs: Ere) -> bool:
        # A failed inner decision is a fault of this algebra, not a verdict.
        try:
            return self._checker.check(lhs, rhs).holds
        except FuelExhausted as exc:
            raise AlgebraError(f"inner containment decision failed: {exc}") from exc

    def contains(self, a: RegexSet, symbol: str) -> bool:
        self._own(a)
        return self._checker.membership(symbol, a.expr)

    def pick_witness(self, a: RegexSet) -> str:
        self._own(a)
        word = self._witness.get(a.expr.eid)
        if word is None:
            symbols = shortest_word(self.inner, a.expr)
            if symbols is None:
                raise AlgebraError("cannot pick a witness from the empty set")
            word = "".join(symbols)
            self._witness[a.expr.eid] = word
        return word

    def symbol_key(self, symbol: str) -> tuple[int, str]:
        # Shortlex: inner words are ordered by length, then lexicographically.
        return (len(symbol), symbol)

    def word_of(self, symbols: Sequence) -> tuple:
        return tuple(symbols)

    def format_word(self, word: Iterable[str]) -> str:
        return "/".join("".join(escape_char(c, bare=False) for c in w) for w in word)

    def class_set(self, items, negate):
        raise AlgebraError("the regex algebra has no character-class syntax")

    def format_set(self, a: RegexSet) -> str:
        self._own(a)
        return "{" + to_text(a.expr) + "}"
