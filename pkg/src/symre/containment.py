"""The containment decision procedure.

A query unfolds the inequality pair by pair: a pair whose left side accepts
the empty word while the right side does not is a refutation; a revisited
pair closes a cycle and counts as proven; otherwise the pair is split along
the next literals of the inequality and both sides are differentiated by
each literal.  Termination follows from the finiteness of dissimilar
iterated derivatives.  Four fast-path axioms (identity, empty left side,
nullable right side for an epsilon left side, and empty right side against
a non-empty left language) shortcut the unfolding; they never change a
verdict, only the statistics.

Refutations carry a witness word built from the deterministic per-literal
witness symbols along the failing path, so a reported witness is always a
member of the left language and never of the right one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union as TypingUnion

from .derivative import deriv_literal, deriv_symbol, deriv_word
from .nextlit import next_literals, next_of_ineq
from .syntax import Epsilon, Ere, ExprBuilder, to_text

DEFAULT_FUEL = 1 << 20

Word = TypingUnion[str, tuple]
TraceSink = Callable[[dict], None]

TRACE_RULES = (
    "disprove",
    "cycle",
    "unfold",
    "prove-identity",
    "prove-empty",
    "prove-nullable",
    "disprove-empty",
)


@dataclass(frozen=True)
class CheckStats:
    visited: int
    max_depth: int


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Word]
    stats: CheckStats


class FuelExhausted(RuntimeError):
    """The defensive visited-pair cap was hit; this is a diagnostic, not a verdict."""

    def __init__(self, visited: int, max_depth: int):
        super().__init__(
            f"fuel exhausted after {visited} visited pairs (max depth {max_depth})"
        )
        self.visited = visited
        self.max_depth = max_depth


def membership(b: ExprBuilder, word: Iterable, r: Ere) -> bool:
    """Word problem: does the language of ``r`` contain ``word``?"""
    return deriv_word(b, word, r).nullable


def shortest_word(b: ExprBuilder, r: Ere, fuel: int = DEFAULT_FUEL) -> Optional[tuple]:
    """Shortest (then least) member of the language as a symbol tuple.

    Returns ``None`` when the language is empty.  Breadth-first search over
    the derivative graph, expanding next literals in canonical order, so
    the result is the least word under the shortlex order induced by the
    algebra's symbol order.
    """
    if r.nullable:
        return ()
    alg = b.algebra
    seen = {r.eid}
    queue: deque[tuple[Ere, tuple]] = deque([(r, ())])
    while queue:
        node, word = queue.popleft()
        for a_set in next_literals(b, node):
            a = alg.pick_witness(a_set)
            child = deriv_symbol(b, a, node)
            if child.eid in seen:
                continue
            seen.add(child.eid)
            if len(seen) > fuel:
                raise FuelExhausted(len(seen), len(word) + 1)
            grown = word + (a,)
            if child.nullable:
                return grown
            queue.append((child, grown))
    return None


class Checker:
    """Containment, equivalence, and membership over one expression builder.

    A checker instance owns its builder's interning table and memo caches
    for the duration of a query; run concurrent queries on separate
    instances.  ``global_memo`` keeps every visited pair for cycle
    detection (the default); disabling it scopes assumptions to the
    current unfolding path exactly as the rules are stated.
    """

    def __init__(
        self,
        builder: ExprBuilder,
        *,
        use_axioms: bool = True,
        global_memo: bool = True,
        fuel: int = DEFAULT_FUEL,
        trace: Optional[TraceSink] = None,
    ):
        self.builder = builder
        self.use_axioms = use_axioms
        self.global_memo = global_memo
        self.fuel = fuel
        self.trace = trace

    # -- queries -----------------------------------------------------------

    def check(self, r: Ere, s: Ere) -> Verdict:
        """Decide whether the language of ``r`` is contained in ``s``."""
        b = self.builder
        alg = b.algebra
        assumed: set[tuple[int, int]] = set()
        path: list = []  # witness symbols chosen along the current path
        state = _QueryState()

        def emit(rule: str, lhs: Ere, rhs: Ere, literal, depth: int) -> None:
            if self.trace is not None:
                self.trace(
                    {
                        "rule": rule,
                        "lhs": to_text(lhs),
                        "rhs": to_text(rhs),
                        "literal": None if literal is None else alg.format_set(literal),
                        "depth": depth,
                    }
                )

        def fail(tail: Sequence) -> Verdict:
            word = alg.word_of(tuple(path) + tuple(tail))
            return Verdict(False, word, state.stats())

        def terminal(lhs: Ere, rhs: Ere, depth: int):
            """Disprove, axioms, and cycle detection; None means unfold."""
            state.visited += 1
            state.max_depth = max(state.max_depth, depth)
            if state.visited > self.fuel:
                raise FuelExhausted(state.visited, state.max_depth)
            if lhs.nullable and not rhs.nullable:
                emit("disprove", lhs, rhs, None, depth)
                return False, ()
            if self.use_axioms:
                if lhs is rhs:
                    emit("prove-identity", lhs, rhs, None, depth)
                    return True, ()
                if lhs is b.bottom():
                    emit("prove-empty", lhs, rhs, None, depth)
                    return True, ()
                if isinstance(lhs, Epsilon) and rhs.nullable:
                    emit("prove-nullable", lhs, rhs, None, depth)
                    return True, ()
                if rhs is b.bottom() and next_literals(b, lhs):
                    tail = shortest_word(b, lhs, self.fuel)
                    if tail is not None:
                        emit("disprove-empty", lhs, rhs, None, depth)
                        return False, tail
            if (lhs.eid, rhs.eid) in assumed:
                emit("cycle", lhs, rhs, None, depth)
                return True, ()
            return None

        def branches(lhs: Ere, rhs: Ere) -> list:
            return list(next_of_ineq(b, lhs, rhs))

        outcome = terminal(r, s, 0)
        if outcome is not None:
            verdict, tail = outcome
            return Verdict(True, None, state.stats()) if verdict else fail(tail)
        root_branches = branches(r, s)
        if not root_branches:
            emit("unfold", r, s, None, 0)
            return Verdict(True, None, state.stats())
        assumed.add((r.eid, s.eid))
        frames: list[list] = [[r, s, root_branches, 0]]

        while frames:
            frame = frames[-1]
            lhs, rhs, todo, idx = frame
            depth = len(frames) - 1
            if idx == len(todo):
                frames.pop()
                if not self.global_memo:
                    assumed.discard((lhs.eid, rhs.eid))
                if frames:
                    path.pop()
                continue
            frame[3] += 1
            a_set = todo[idx]
            emit("unfold", lhs, rhs, a_set, depth)
            dl = deriv_literal(b, a_set, lhs)
            dr = deriv_literal(b, a_set, rhs)
            path.append(alg.pick_witness(a_set))
            outcome = terminal(dl, dr, depth + 1)
            if outcome is not None:
                verdict, tail = outcome
                if not verdict:
                    return fail(tail)
                path.pop()
                continue
            child_branches = branches(dl, dr)
            if not child_branches:
                emit("unfold", dl, dr, None, depth + 1)
                if self.global_memo:
                    assumed.add((dl.eid, dr.eid))
                path.pop()
                continue
            assumed.add((dl.eid, dr.eid))
            frames.append([dl, dr, child_branches, 0])

        return Verdict(True, None, state.stats())

    def equivalent(self, r: Ere, s: Ere) -> Verdict:
        """Decide language equality as containment in both directions.

        A failing verdict carries the witness of whichever direction broke
        first, so the word belongs to exactly one of the two languages.
        """
        forward = self.check(r, s)
        if not forward.holds:
            return forward
        backward = self.check(s, r)
        stats = CheckStats(
            forward.stats.visited + backward.stats.visited,
            max(forward.stats.max_depth, backward.stats.max_depth),
        )
        return Verdict(backward.holds, backward.witness, stats)

    def membership(self, word: Iterable, r: Ere) -> bool:
        return membership(self.builder, word, r)


class _QueryState:
    __slots__ = ("visited", "max_depth")

    def __init__(self):
        self.visited = 0
        self.max_depth = 0

    def stats(self) -> CheckStats:
        return CheckStats(self.visited, self.max_depth)


# ---------------------------------------------------------------------------
# Trace replay

_TERMINAL_VERDICT = {
    "disprove": False,
    "disprove-empty": False,
    "cycle": True,
    "prove-identity": True,
    "prove-empty": True,
    "prove-nullable": True,
}


def replay_trace(events: Sequence[dict]) -> bool:
    """Re-evaluate a rule trace symbolically and return its verdict.

    An ``unfold`` event with a literal is followed by the sub-trace of that
    branch one level deeper; a null literal marks an unfolding with no
    branches.  The trace of a query must replay to the query's verdict.
    """
    if not events:
        raise ValueError("empty trace")
    verdict, idx = _replay_at(events, 0, 0)
    if idx != len(events):
        raise ValueError(f"trailing trace events at index {idx}")
    return verdict


def _replay_at(events: Sequence[dict], i: int, depth: int) -> tuple[bool, int]:
    event = events[i]
    if event["depth"] != depth:
        raise ValueError(f"trace event at index {i} has unexpected depth")
    rule = event["rule"]
    if rule != "unfold":
        return _TERMINAL_VERDICT[rule], i + 1
    pair = (event["lhs"], event["rhs"])
    verdict = True
    while (
        i < len(events)
        and events[i]["depth"] == depth
        and events[i]["rule"] == "unfold"
        and (events[i]["lhs"], events[i]["rhs"]) == pair
    ):
        literal = events[i]["literal"]
        i += 1
        if literal is None:
            continue
        verdict, i = _replay_at(events, i, depth + 1)
        if not verdict:
            break
    return verdict, i
