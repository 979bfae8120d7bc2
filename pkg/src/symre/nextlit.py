"""Next-literal partitions.

``next_literals(b, r)`` computes a finite collection of mutually disjoint,
non-empty symbol sets covering every symbol that can start a word of the
language, such that all symbols inside one member have the same derivative.
Partitions are canonical: members are deduplicated, empty sets are filtered
eagerly, and the collection is ordered by each member's least symbol.
"""

from __future__ import annotations

from typing import Iterable

from .alphabet import Algebra, SymbolSet
from .syntax import And, Concat, Epsilon, Ere, ExprBuilder, Literal, Not, Star, Union

Partition = tuple[SymbolSet, ...]


def canonical_partition(alg: Algebra, sets: Iterable[SymbolSet]) -> Partition:
    """Drop empty members, deduplicate, and order by least symbol."""
    unique = {s: None for s in sets if not alg.is_empty(s)}
    return tuple(
        sorted(unique, key=lambda s: alg.symbol_key(alg.pick_witness(s)))
    )


def partition_union(alg: Algebra, parts: Partition) -> SymbolSet:
    out = alg.bottom()
    for s in parts:
        out = alg.union(out, s)
    return out


def join(alg: Algebra, left: Partition, right: Partition) -> Partition:
    """Common refinement covering the union of both sides."""
    outside_right = alg.complement(partition_union(alg, right))
    outside_left = alg.complement(partition_union(alg, left))
    pieces = [alg.intersect(a, b) for a in left for b in right]
    pieces.extend(alg.intersect(a, outside_right) for a in left)
    pieces.extend(alg.intersect(outside_left, b) for b in right)
    return canonical_partition(alg, pieces)


def left_join(alg: Algebra, left: Partition, right: Partition) -> Partition:
    """Refinement covering exactly the union of the left side."""
    outside_right = alg.complement(partition_union(alg, right))
    pieces = [alg.intersect(a, b) for a in left for b in right]
    pieces.extend(alg.intersect(a, outside_right) for a in left)
    return canonical_partition(alg, pieces)


def meet(alg: Algebra, left: Partition, right: Partition) -> Partition:
    """All pairwise intersections; covers symbols common to both sides."""
    return canonical_partition(
        alg, (alg.intersect(a, b) for a in left for b in right)
    )


def next_literals(b: ExprBuilder, r: Ere) -> Partition:
    out = b.next_cache.get(r.eid)
    if out is None:
        out = _next_literals(b, r)
        b.next_cache[r.eid] = out
    return out


def _next_literals(b: ExprBuilder, r: Ere) -> Partition:
    alg = b.algebra
    if isinstance(r, Epsilon):
        return ()
    if isinstance(r, Literal):
        return canonical_partition(alg, (r.symbols,))
    if isinstance(r, Union):
        parts = next_literals(b, r.members[0])
        for m in r.members[1:]:
            parts = join(alg, parts, next_literals(b, m))
        return parts
    if isinstance(r, Concat):
        if r.head.nullable:
            return join(alg, next_literals(b, r.head), next_literals(b, r.tail))
        return next_literals(b, r.head)
    if isinstance(r, Star):
        return next_literals(b, r.inner)
    if isinstance(r, And):
        parts = next_literals(b, r.members[0])
        for m in r.members[1:]:
            parts = meet(alg, parts, next_literals(b, m))
        return parts
    if isinstance(r, Not):
        inner = next_literals(b, r.inner)
        # The extra member collects all symbols outside every inner literal;
        # the meet over an empty family is the full alphabet.
        extra = alg.complement(partition_union(alg, inner))
        return canonical_partition(alg, inner + (extra,))
    raise TypeError(r)


def next_of_ineq(b: ExprBuilder, r: Ere, s: Ere) -> Partition:
    """Next literals of the inequality ``r`` contained-in ``s``."""
    return left_join(b.algebra, next_literals(b, r), next_literals(b, s))
