"""Symbol-set algebras.

A literal in an expression is not a single character but a set of symbols
drawn from a boolean algebra with decidable emptiness and equality.  Three
representations are provided here:

* :class:`BitsetAlgebra` -- an explicitly enumerated small alphabet, sets
  stored as bit masks.
* :class:`IntervalAlgebra` -- sets of codepoints stored as sorted disjoint
  intervals; scales to the full Unicode range.
* :class:`FiniteCofiniteAlgebra` -- sets stored as an explicit finite set
  plus a finite/cofinite tag; cofinite sets never enumerate the universe.

A fourth, regex-valued algebra (symbols are words over an inner alphabet)
lives in :mod:`symre.regexalg` because it builds on the containment engine.

All set values are immutable and canonical: two sets with the same
denotation built by the same algebra compare (and hash) equal.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_CODEPOINT = 0x10FFFF

# Characters that must be escaped when printed as a bare atom of the
# expression syntax, respectively inside a [...] class.
_ATOM_META = set("|&!*.()[]^-\\")
_CLASS_META = set("][^-\\")


class AlgebraError(ValueError):
    """A symbol-set operation was used incorrectly (e.g. mixed algebras)."""


class SymbolSet:
    """Base class for algebra-specific set representations."""

    __slots__ = ()
    algebra: "Algebra"

    def __or__(self, other: "SymbolSet") -> "SymbolSet":
        return self.algebra.union(self, other)

    def __and__(self, other: "SymbolSet") -> "SymbolSet":
        return self.algebra.intersect(self, other)

    def __invert__(self) -> "SymbolSet":
        return self.algebra.complement(self)

    def __le__(self, other: "SymbolSet") -> bool:
        return self.algebra.is_subset(self, other)

    def __contains__(self, symbol) -> bool:
        return self.algebra.contains(self, symbol)

    def __str__(self) -> str:
        return self.algebra.format_set(self)


class Algebra:
    """Boolean algebra over subsets of a fixed universe of symbols.

    Subclasses provide the representation; this base class carries the
    derived operations and the canonical textual rendering.  Sets created
    by one algebra instance must not be passed to another.
    """

    def _own(self, *sets: SymbolSet) -> None:
        for s in sets:
            if s.algebra is not self:
                raise AlgebraError("symbol set belongs to a different algebra")

    # -- representation-specific core -------------------------------------

    def bottom(self) -> SymbolSet:
        raise NotImplementedError

    def top(self) -> SymbolSet:
        raise NotImplementedError

    def union(self, a: SymbolSet, b: SymbolSet) -> SymbolSet:
        raise NotImplementedError

    def intersect(self, a: SymbolSet, b: SymbolSet) -> SymbolSet:
        raise NotImplementedError

    def complement(self, a: SymbolSet) -> SymbolSet:
        raise NotImplementedError

    def is_empty(self, a: SymbolSet) -> bool:
        raise NotImplementedError

    def contains(self, a: SymbolSet, symbol) -> bool:
        raise NotImplementedError

    def pick_witness(self, a: SymbolSet):
        """Least symbol of a non-empty set; deterministic for equal sets."""
        raise NotImplementedError

    def symbol_key(self, symbol):
        """Sort key realizing the algebra's total order on symbols."""
        raise NotImplementedError

    def class_set(self, items: Sequence[tuple[int, int]], negate: bool) -> SymbolSet:
        """Build a set from parsed ``[...]`` class items (codepoint ranges)."""
        raise NotImplementedError

    # -- derived operations ------------------------------------------------

    def is_equal(self, a: SymbolSet, b: SymbolSet) -> bool:
        self._own(a, b)
        return a == b

    def is_subset(self, a: SymbolSet, b: SymbolSet) -> bool:
        return self.is_empty(self.intersect(a, self.complement(b)))

    def word_of(self, symbols: Sequence):
        """Assemble a word from a symbol sequence (characters join to str)."""
        return "".join(symbols)

    def format_word(self, word) -> str:
        return "".join(escape_char(c, bare=False) for c in word)

    # -- rendering ---------------------------------------------------------

    def _intervals(self, a: SymbolSet) -> tuple[tuple[int, int], ...]:
        """Canonical codepoint intervals of the denotation (char algebras)."""
        raise NotImplementedError

    def format_set(self, a: SymbolSet) -> str:
        self._own(a)
        if self.is_empty(a):
            return "[]"
        comp = self.complement(a)
        if self.is_empty(comp):
            return "."
        direct = self._intervals(a)
        inverse = self._intervals(comp)
        if len(inverse) < len(direct):
            return "[^" + format_class_items(inverse) + "]"
        if len(direct) == 1 and direct[0][0] == direct[0][1]:
            return escape_char(chr(direct[0][0]), bare=True)
        return "[" + format_class_items(direct) + "]"


def escape_char(c: str, bare: bool) -> str:
    """Render one character for output; non-printables become ``\\u{...}``."""
    cp = ord(c)
    if cp < 0x20 or cp == 0x7F or cp > 0x7E:
        return "\\u{%x}" % cp
    meta = _ATOM_META if bare else _CLASS_META
    if c in meta:
        return "\\" + c
    return c


def format_class_items(intervals: Iterable[tuple[int, int]]) -> str:
    parts = []
    for lo, hi in intervals:
        if hi - lo >= 2:
            parts.append(escape_char(chr(lo), bare=False) + "-" + escape_char(chr(hi), bare=False))
        else:
            parts.extend(escape_char(chr(cp), bare=False) for cp in range(lo, hi + 1))
    return "".join(parts)


def merge_intervals(items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Sort and fuse overlapping or adjacent inclusive codepoint ranges."""
    out: list[list[int]] = []
    for lo, hi in sorted(items):
        if lo > hi:
            continue
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


# ---------------------------------------------------------------------------
# Bit vectors over a small explicit alphabet


@dataclass(frozen=True)
class BitSet(SymbolSet):
    algebra: "BitsetAlgebra"
    mask: int


class BitsetAlgebra(Algebra):
    """Universe given as an explicit string of characters."""

    def __init__(self, symbols: str):
        if not symbols:
            raise AlgebraError("bitset alphabet must not be empty")
        self.symbols: tuple[str, ...] = tuple(sorted(set(symbols)))
        self._index = {c: i for i, c in enumerate(self.symbols)}
        self._full = (1 << len(self.symbols)) - 1

    def bottom(self) -> BitSet:
        return BitSet(self, 0)

    def top(self) -> BitSet:
        return BitSet(self, self._full)

    def from_chars(self, chars: Iterable[str]) -> BitSet:
        mask = 0
        for c in chars:
            try:
                mask |= 1 << self._index[c]
            except KeyError:
                raise AlgebraError(f"symbol {c!r} is not in the alphabet") from None
        return BitSet(self, mask)

    def members(self, a: BitSet) -> tuple[str, ...]:
        self._own(a)
        return tuple(c for i, c in enumerate(self.symbols) if a.mask >> i & 1)

    def union(self, a: BitSet, b: BitSet) -> BitSet:
        self._own(a, b)
        return BitSet(self, a.mask | b.mask)

    def intersect(self, a: BitSet, b: BitSet) -> BitSet:
        self._own(a, b)
        return BitSet(self, a.mask & b.mask)

    def complement(self, a: BitSet) -> BitSet:
        self._own(a)
        return BitSet(self, a.mask ^ self._full)

    def is_empty(self, a: BitSet) -> bool:
        self._own(a)
        return a.mask == 0

    def contains(self, a: BitSet, symbol: str) -> bool:
        self._own(a)
        i = self._index.get(symbol)
        return i is not None and a.mask >> i & 1 == 1

    def pick_witness(self, a: BitSet) -> str:
        self._own(a)
        if a.mask == 0:
            raise AlgebraError("cannot pick a witness from the empty set")
        low = a.mask & -a.mask
        return self.symbols[low.bit_length() - 1]

    def symbol_key(self, symbol: str) -> int:
        return ord(symbol)

    def class_set(self, items: Sequence[tuple[int, int]], negate: bool) -> BitSet:
        ivs = merge_intervals(items)
        mask = 0
        for i, c in enumerate(self.symbols):
            cp = ord(c)
            if any(lo <= cp <= hi for lo, hi in ivs):
                mask |= 1 << i
        if negate:
            mask ^= self._full
        return BitSet(self, mask)

    def _intervals(self, a: BitSet) -> tuple[tuple[int, int], ...]:
        return merge_intervals((ord(c), ord(c)) for c in self.members(a))


# ---------------------------------------------------------------------------
# Sorted disjoint codepoint intervals


@dataclass(frozen=True)
class IntervalSet(SymbolSet):
    algebra: "IntervalAlgebra"
    intervals: tuple[tuple[int, int], ...]  # inclusive, sorted, non-adjacent


class IntervalAlgebra(Algebra):
    """Codepoint sets over a configurable range (default full Unicode)."""

    def __init__(self, min_codepoint: int = 0, max_codepoint: int = MAX_CODEPOINT):
        if not 0 <= min_codepoint <= max_codepoint <= MAX_CODEPOINT:
            raise AlgebraError("invalid codepoint range")
        self.min_codepoint = min_codepoint
        self.max_codepoint = max_codepoint

    def _clip(self, items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
        return merge_intervals(
            (max(lo, self.min_codepoint), min(hi, self.max_codepoint)) for lo, hi in items
        )

    def bottom(self) -> IntervalSet:
        return IntervalSet(self, ())

    def top(self) -> IntervalSet:
        return IntervalSet(self, ((self.min_codepoint, self.max_codepoint),))

    def union(self, a: IntervalSet, b: IntervalSet) -> IntervalSet:
        self._own(a, b)
        return IntervalSet(self, merge_intervals(a.intervals + b.intervals))

    def intersect(self, a: IntervalSet, b: IntervalSet) -> IntervalSet:
        self._own(a, b)
        out = []
        i = j = 0
        xs, ys = a.intervals, b.intervals
        while i < len(xs) and j < len(ys):
            lo = max(xs[i][0], ys[j][0])
            hi = min(xs[i][1], ys[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(self, tuple(out))

    def complement(self, a: IntervalSet) -> IntervalSet:
        self._own(a)
        out = []
        cursor = self.min_codepoint
        for lo, hi in a.intervals:
            if cursor < lo:
                out.append((cursor, lo - 1))
            cursor = hi + 1
        if cursor <= self.max_codepoint:
            out.append((cursor, self.max_codepoint))
        return IntervalSet(self, tuple(out))

    def is_empty(self, a: IntervalSet) -> bool:
        self._own(a)
        return not a.intervals

    def contains(self, a: IntervalSet, symbol: str) -> bool:
        self._own(a)
        cp = ord(symbol)
        idx = bisect_right(a.intervals, (cp, MAX_CODEPOINT + 1)) - 1
        return idx >= 0 and a.intervals[idx][0] <= cp <= a.intervals[idx][1]

    def pick_witness(self, a: IntervalSet) -> str:
        self._own(a)
        if not a.intervals:
            raise AlgebraError("cannot pick a witness from the empty set")
        return chr(a.intervals[0][0])

    def symbol_key(self, symbol: str) -> int:
        return ord(symbol)

    def class_set(self, items: Sequence[tuple[int, int]], negate: bool) -> IntervalSet:
        s = IntervalSet(self, self._clip(items))
        return self.complement(s) if negate else s

    def _intervals(self, a: IntervalSet) -> tuple[tuple[int, int], ...]:
        return a.intervals


# ---------------------------------------------------------------------------
# Finite / cofinite sets


@dataclass(frozen=True)
class FcSet(SymbolSet):
    algebra: "FiniteCofiniteAlgebra"
    cofinite: bool
    members: frozenset[str]  # the excluded symbols when cofinite


class FiniteCofiniteAlgebra(Algebra):
    """Explicit finite sets and their complements over a bounded universe.

    The universe bound only matters for ``pick_witness`` on cofinite sets
    and for canonicalization; no operation ever enumerates the universe.
    ``scan_steps`` counts every symbol actually visited by an enumeration
    and exists purely as instrumentation.
    """

    def __init__(self, min_codepoint: int = 0, max_codepoint: int = MAX_CODEPOINT):
        if not 0 <= min_codepoint <= max_codepoint <= MAX_CODEPOINT:
            raise AlgebraError("invalid codepoint range")
        self.min_codepoint = min_codepoint
        self.max_codepoint = max_codepoint
        self.size = max_codepoint - min_codepoint + 1
        self.scan_steps = 0

    def _make(self, cofinite: bool, members: frozenset[str]) -> FcSet:
        # Canonical tag: the explicitly stored part is the smaller of the
        # set and its complement; ties resolve to the finite tag.
        explicit = len(members)
        denoted = self.size - explicit if cofinite else explicit
        if cofinite and denoted <= explicit:
            return FcSet(self, False, self._enumerate_complement(members))
        if not cofinite and self.size - denoted < denoted:
            return FcSet(self, True, self._enumerate_complement(members))
        return FcSet(self, cofinite, members)

    def _enumerate_complement(self, members: frozenset[str]) -> frozenset[str]:
        out = []
        cursor = self.min_codepoint
        for cp in sorted(ord(c) for c in members):
            out.extend(map(chr, range(cursor, cp)))
            cursor = cp + 1
        out.extend(map(chr, range(cursor, self.max_codepoint + 1)))
        self.scan_steps += len(out) + len(members)
        return frozenset(out)

    def bottom(self) -> FcSet:
        return FcSet(self, False, frozenset())

    def top(self) -> FcSet:
        return self._make(True, frozenset())

    def finite(self, chars: Iterable[str]) -> FcSet:
        return self._make(False, frozenset(chars))

    def cofinite(self, excluded: Iterable[str]) -> FcSet:
        return self._make(True, frozenset(excluded))

    def union(self, a: FcSet, b: FcSet) -> FcSet:
        self._own(a, b)
        if a.cofinite and b.cofinite:
            return self._make(True, a.members & b.members)
        if a.cofinite:
            return self._make(True, a.members - b.members)
        if b.cofinite:
            return self._make(True, b.members - a.members)
        return self._make(False, a.members | b.members)

    def intersect(self, a: FcSet, b: FcSet) -> FcSet:
        self._own(a, b)
        if a.cofinite and b.cofinite:
            return self._make(True, a.members | b.members)
        if a.cofinite:
            return self._make(False, b.members - a.members)
        if b.cofinite:
            return self._make(False, a.members - b.members)
        return self._make(False, a.members & b.members)

    def complement(self, a: FcSet) -> FcSet:
        self._own(a)
        return self._make(not a.cofinite, a.members)

    def is_empty(self, a: FcSet) -> bool:
        self._own(a)
        return not a.cofinite and not a.members

    def contains(self, a: FcSet, symbol: str) -> bool:
        self._own(a)
        if not self.min_codepoint <= ord(symbol) <= self.max_codepoint:
            return False
        return (symbol in a.members) != a.cofinite

    def pick_witness(self, a: FcSet) -> str:
        self._own(a)
        if self.is_empty(a):
            raise AlgebraError("cannot pick a witness from the empty set")
        if not a.cofinite:
            return min(a.members, key=ord)
        for cp in range(self.min_codepoint, self.max_codepoint + 1):
            self.scan_steps += 1
            if chr(cp) not in a.members:
                return chr(cp)
        raise AlgebraError("cofinite set with no witness")  # unreachable: canonical

    def symbol_key(self, symbol: str) -> int:
        return ord(symbol)

    # Character classes are expanded to explicit symbols, so huge ranges are
    # rejected rather than silently materialized.
    CLASS_EXPANSION_LIMIT = 1 << 16

    def class_set(self, items: Sequence[tuple[int, int]], negate: bool) -> FcSet:
        ivs = self._clip_items(items)
        total = sum(hi - lo + 1 for lo, hi in ivs)
        if total > self.CLASS_EXPANSION_LIMIT:
            raise AlgebraError(
                "character class too large for the finite/cofinite algebra"
            )
        self.scan_steps += total
        chars = frozenset(chr(cp) for lo, hi in ivs for cp in range(lo, hi + 1))
        return self._make(negate, chars)

    def _clip_items(self, items: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
        return merge_intervals(
            (max(lo, self.min_codepoint), min(hi, self.max_codepoint)) for lo, hi in items
        )

    def format_set(self, a: FcSet) -> str:
        self._own(a)
        if self.is_empty(a):
            return "[]"
        if a.cofinite and not a.members:
            return "."
        items = merge_intervals((ord(c), ord(c)) for c in a.members)
        if a.cofinite:
            return "[^" + format_class_items(items) + "]"
        if len(a.members) == 1:
            return escape_char(next(iter(a.members)), bare=True)
        return "[" + format_class_items(items) + "]"
