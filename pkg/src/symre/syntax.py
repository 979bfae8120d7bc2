"""Expression trees, similarity normalization, and the concrete syntax.

Trees are built exclusively through :class:`ExprBuilder`, which hash-conses
every node: structurally equal normalized trees are the *same object*, so
equality tests, context lookups and memo tables all run on identity.  The
constructors apply exactly these language-preserving rewrites:

* union: flattened, sorted, duplicate-free, ``[]`` dropped, literal members
  merged into a single literal (``a|b`` becomes ``[ab]``);
* concatenation: ``[]`` annihilates, ``()`` is dropped, spines lean right;
* star: ``r** = r*``, ``()* = ()``, ``[]* = ()``;
* intersection: flattened, sorted, duplicate-free, ``[]`` annihilates;
* complement: double negation cancels.

The empty expression is represented as the empty-class literal ``[]`` and
the universal language as ``.*``.
"""

from __future__ import annotations

from typing import Callable

from .alphabet import Algebra, AlgebraError, SymbolSet

# Raw (pre-normalization) parse trees, kept around for metrics on the
# expression as written: ("eps",) | ("lit", SymbolSet) | ("star", raw) |
# ("not", raw) | ("union"|"concat"|"and", raw, raw).
RawExpr = tuple


class Ere:
    """A normalized expression node; equality and hashing are by identity."""

    __slots__ = ("eid", "nullable")

    def __init__(self, eid: int, nullable: bool):
        self.eid = eid
        self.nullable = nullable

    def __repr__(self) -> str:
        return f"<Ere {self.eid}: {to_text(self)}>"


class Epsilon(Ere):
    __slots__ = ()


class Literal(Ere):
    __slots__ = ("symbols",)

    def __init__(self, eid: int, nullable: bool, symbols: SymbolSet):
        super().__init__(eid, nullable)
        self.symbols = symbols


class Union(Ere):
    __slots__ = ("members",)

    def __init__(self, eid: int, nullable: bool, members: tuple[Ere, ...]):
        super().__init__(eid, nullable)
        self.members = members


class Concat(Ere):
    __slots__ = ("head", "tail")

    def __init__(self, eid: int, nullable: bool, head: Ere, tail: Ere):
        super().__init__(eid, nullable)
        self.head = head
        self.tail = tail


class Star(Ere):
    __slots__ = ("inner",)

    def __init__(self, eid: int, nullable: bool, inner: Ere):
        super().__init__(eid, nullable)
        self.inner = inner


class And(Ere):
    __slots__ = ("members",)

    def __init__(self, eid: int, nullable: bool, members: tuple[Ere, ...]):
        super().__init__(eid, nullable)
        self.members = members


class Not(Ere):
    __slots__ = ("inner",)

    def __init__(self, eid: int, nullable: bool, inner: Ere):
        super().__init__(eid, nullable)
        self.inner = inner


class ExprBuilder:
    """Owner of the interning table and the smart constructors.

    A builder is bound to one algebra; expressions from different builders
    must never be mixed.  The table is the only mutable state and is meant
    to be confined to a single checker instance.
    """

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self._table: dict[tuple, Ere] = {}
        self._next_id = 0
        # Memo tables used by the derivative and next-literal operations.
        self.deriv_cache: dict[tuple, Ere] = {}
        self.next_cache: dict[int, tuple[SymbolSet, ...]] = {}
        self._bottom = self.literal(algebra.bottom())

    def _intern(self, key: tuple, ctor: Callable, *args, nullable: bool) -> Ere:
        node = self._table.get(key)
        if node is None:
            node = ctor(self._next_id, nullable, *args)
            self._next_id += 1
            self._table[key] = node
        return node

    def epsilon(self) -> Ere:
        return self._intern(("eps",), Epsilon, nullable=True)

    def literal(self, symbols: SymbolSet) -> Ere:
        if symbols.algebra is not self.algebra:
            raise AlgebraError("literal set belongs to a different algebra")
        return self._intern(("lit", symbols), Literal, symbols, nullable=False)

    def char(self, c: str) -> Ere:
        return self.literal(self.algebra.class_set([(ord(c), ord(c))], False))

    def bottom(self) -> Ere:
        """The empty expression ``[]``."""
        return self._bottom

    def sigma_star(self) -> Ere:
        """The universal expression ``.*``."""
        return self.star(self.literal(self.algebra.top()))

    def union(self, *parts: Ere) -> Ere:
        alg = self.algebra
        flat: list[Ere] = []
        for p in parts:
            flat.extend(p.members if isinstance(p, Union) else (p,))
        litset = alg.bottom()
        members: dict[int, Ere] = {}
        for p in flat:
            if isinstance(p, Literal):
                litset = alg.union(litset, p.symbols)
            else:
                members[p.eid] = p
        if not alg.is_empty(litset) or not members:
            lit = self.literal(litset)
            members[lit.eid] = lit
        ordered = tuple(sorted(members.values(), key=lambda n: n.eid))
        if len(ordered) == 1:
            return ordered[0]
        key = ("union", tuple(n.eid for n in ordered))
        return self._intern(
            key, Union, ordered, nullable=any(n.nullable for n in ordered)
        )

    def concat(self, r: Ere, s: Ere) -> Ere:
        if r is self._bottom or s is self._bottom:
            return self._bottom
        if isinstance(r, Epsilon):
            return s
        if isinstance(s, Epsilon):
            return r
        if isinstance(r, Concat):
            return self.concat(r.head, self.concat(r.tail, s))
        key = ("cat", r.eid, s.eid)
        return self._intern(key, Concat, r, s, nullable=r.nullable and s.nullable)

    def star(self, r: Ere) -> Ere:
        if isinstance(r, Star):
            return r
        if isinstance(r, Epsilon) or r is self._bottom:
            return self.epsilon()
        return self._intern(("star", r.eid), Star, r, nullable=True)

    def and_(self, *parts: Ere) -> Ere:
        if not parts:
            raise TypeError("and_() needs at least one operand")
        flat: list[Ere] = []
        for p in parts:
            flat.extend(p.members if isinstance(p, And) else (p,))
        members: dict[int, Ere] = {}
        for p in flat:
            if p is self._bottom:
                return self._bottom
            members[p.eid] = p
        ordered = tuple(sorted(members.values(), key=lambda n: n.eid))
        if len(ordered) == 1:
            return ordered[0]
        key = ("and", tuple(n.eid for n in ordered))
        return self._intern(
            key, And, ordered, nullable=all(n.nullable for n in ordered)
        )

    def not_(self, r: Ere) -> Ere:
        if isinstance(r, Not):
            return r.inner
        return self._intern(("not", r.eid), Not, r, nullable=not r.nullable)

    def build(self, raw: RawExpr) -> Ere:
        """Fold a raw parse tree through the normalizing constructors."""
        tag = raw[0]
        if tag == "eps":
            return self.epsilon()
        if tag == "lit":
            return self.literal(raw[1])
        if tag == "star":
            return self.star(self.build(raw[1]))
        if tag == "not":
            return self.not_(self.build(raw[1]))
        if tag == "union":
            return self.union(self.build(raw[1]), self.build(raw[2]))
        if tag == "concat":
            return self.concat(self.build(raw[1]), self.build(raw[2]))
        if tag == "and":
            return self.and_(self.build(raw[1]), self.build(raw[2]))
        raise ValueError(f"unknown raw tag {tag!r}")

    def parse(self, text: str) -> Ere:
        return self.build(parse_raw(text, self.algebra))


def size(r: Ere) -> int:
    """Number of constructors and literals, counted on the normalized tree."""
    if isinstance(r, (Epsilon, Literal)):
        return 1
    if isinstance(r, (Star, Not)):
        return size(r.inner) + 1
    if isinstance(r, Concat):
        return size(r.head) + size(r.tail) + 1
    if isinstance(r, (Union, And)):
        return sum(size(m) for m in r.members) + len(r.members) - 1
    raise TypeError(r)


def width(r: Ere) -> int:
    """Total number of literal leaves."""
    if isinstance(r, Epsilon):
        return 0
    if isinstance(r, Literal):
        return 1
    if isinstance(r, (Star, Not)):
        return width(r.inner)
    if isinstance(r, Concat):
        return width(r.head) + width(r.tail)
    if isinstance(r, (Union, And)):
        return sum(width(m) for m in r.members)
    raise TypeError(r)


def raw_size(raw: RawExpr) -> int:
    tag = raw[0]
    if tag in ("eps", "lit"):
        return 1
    if tag in ("star", "not"):
        return raw_size(raw[1]) + 1
    return raw_size(raw[1]) + raw_size(raw[2]) + 1


def raw_width(raw: RawExpr) -> int:
    tag = raw[0]
    if tag == "eps":
        return 0
    if tag == "lit":
        return 1
    if tag in ("star", "not"):
        return raw_width(raw[1])
    return raw_width(raw[1]) + raw_width(raw[2])


# ---------------------------------------------------------------------------
# Concrete syntax
#
#   expr  := alt
#   alt   := and ('|' and)*
#   and   := cat ('&' cat)*
#   cat   := neg+
#   neg   := '!' neg | post
#   post  := atom '*'*
#   atom  := '(' expr? ')' | class | char | '.'
#   class := '[' '^'? items ']'
#
# '()' is the empty word, '[]' the empty set, '.' the full alphabet.
# Postfix '*' binds tightest, then prefix '!', then juxtaposition, then
# '&', then '|'; so  !a*  is  !(a*)  and  a|b&c  is  a|(b&c).


class ParseError(ValueError):
    """Syntax error with the offending position and what was expected."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_ATOM_START_STOP = set("|&)*")  # tokens that cannot start an atom


class _Scanner:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.pos = 0
        self.algebra = algebra

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        c = self.peek()
        if c is None:
            raise ParseError("unexpected end of input", self.pos)
        self.pos += 1
        return c

    def expect(self, c: str) -> None:
        if self.peek() != c:
            raise ParseError(f"expected {c!r}", self.pos)
        self.pos += 1

    def escape(self) -> str:
        # backslash already consumed
        c = self.take()
        if c != "u":
            return c
        self.expect("{")
        start = self.pos
        while self.peek() not in (None, "}"):
            self.pos += 1
        if self.peek() != "}" or self.pos == start:
            raise ParseError("expected hex digits and '}' after \\u{", self.pos)
        digits = self.text[start : self.pos]
        self.pos += 1
        try:
            cp = int(digits, 16)
        except ValueError:
            raise ParseError(f"bad hex escape {digits!r}", start) from None
        if cp > 0x10FFFF:
            raise ParseError(f"codepoint {digits} out of range", start)
        return chr(cp)


def parse_raw(text: str, algebra: Algebra) -> RawExpr:
    """Parse the concrete syntax into a raw tree; no normalization applied."""
    sc = _Scanner(text, algebra)
    raw = _alt(sc)
    if sc.peek() is not None:
        raise ParseError(f"unexpected {sc.peek()!r}", sc.pos)
    return raw


def parse_class_text(text: str, algebra: Algebra) -> SymbolSet:
    """Parse a standalone symbol set: a ``[...]`` class, ``.``, or one char."""
    sc = _Scanner(text, algebra)
    c = sc.peek()
    if c is None:
        raise ParseError("expected a character class", 0)
    if c == "[":
        out = _class(sc)
    elif c == ".":
        sc.take()
        out = algebra.top()
    else:
        ch = sc.escape() if sc.take() == "\\" else c
        out = algebra.class_set([(ord(ch), ord(ch))], False)
    if sc.peek() is not None:
        raise ParseError(f"unexpected {sc.peek()!r} after class", sc.pos)
    return out


def unescape_word(text: str) -> str:
    """Decode backslash escapes in a plain word (CLI ``match`` input)."""
    sc = _Scanner(text, None)  # type: ignore[arg-type]
    out = []
    while sc.peek() is not None:
        c = sc.take()
        out.append(sc.escape() if c == "\\" else c)
    return "".join(out)


def _alt(sc: _Scanner) -> RawExpr:
    raw = _and(sc)
    while sc.peek() == "|":
        sc.take()
        raw = ("union", raw, _and(sc))
    return raw


def _and(sc: _Scanner) -> RawExpr:
    raw = _cat(sc)
    while sc.peek() == "&":
        sc.take()
        raw = ("and", raw, _cat(sc))
    return raw


def _cat(sc: _Scanner) -> RawExpr:
    raw = _neg(sc)
    while sc.peek() is not None and sc.peek() not in _ATOM_START_STOP and sc.peek() != "]":
        raw = ("concat", raw, _neg(sc))
    return raw


def _neg(sc: _Scanner) -> RawExpr:
    if sc.peek() == "!":
        sc.take()
        return ("not", _neg(sc))
    return _post(sc)


def _post(sc: _Scanner) -> RawExpr:
    raw = _atom(sc)
    while sc.peek() == "*":
        sc.take()
        raw = ("star", raw)
    return raw


def _atom(sc: _Scanner) -> RawExpr:
    c = sc.peek()
    if c is None or c in _ATOM_START_STOP or c == "]":
        raise ParseError("expected an expression atom", sc.pos)
    if c == "(":
        sc.take()
        if sc.peek() == ")":
            sc.take()
            return ("eps",)
        raw = _alt(sc)
        sc.expect(")")
        return raw
    if c == "[":
        return ("lit", _class(sc))
    if c == ".":
        sc.take()
        return ("lit", sc.algebra.top())
    if c == "\\":
        sc.take()
        ch = sc.escape()
    else:
        ch = sc.take()
    return ("lit", sc.algebra.class_set([(ord(ch), ord(ch))], False))


def _class_char(sc: _Scanner) -> str:
    c = sc.take()
    if c == "\\":
        return sc.escape()
    return c


def _class(sc: _Scanner) -> SymbolSet:
    sc.expect("[")
    negate = False
    if sc.peek() == "^":
        sc.take()
        negate = True
    items: list[tuple[int, int]] = []
    while sc.peek() != "]":
        if sc.peek() is None:
            raise ParseError("unterminated character class", sc.pos)
        if sc.peek() == "-":
            raise ParseError("'-' must be escaped or part of a range", sc.pos)
        lo = _class_char(sc)
        if sc.peek() == "-":
            sc.take()
            if sc.peek() in (None, "]"):
                raise ParseError("expected range end after '-'", sc.pos)
            hi = _class_char(sc)
            if ord(hi) < ord(lo):
                raise ParseError(f"empty range {lo}-{hi}", sc.pos)
            items.append((ord(lo), ord(hi)))
        else:
            items.append((ord(lo), ord(lo)))
    sc.take()
    return sc.algebra.class_set(items, negate)


# ---------------------------------------------------------------------------
# Rendering


_LEVEL_ALT, _LEVEL_AND, _LEVEL_CAT, _LEVEL_NEG, _LEVEL_POST, _LEVEL_ATOM = 0, 1, 2, 3, 4, 5


def to_text(r: Ere) -> str:
    """Render a normalized tree in the concrete syntax (parse round-trips)."""
    return _render(r, _LEVEL_ALT)


def _render(r: Ere, level: int) -> str:
    if isinstance(r, Epsilon):
        return "()"
    if isinstance(r, Literal):
        return r.symbols.algebra.format_set(r.symbols)
    if isinstance(r, Union):
        text, own = "|".join(_render(m, _LEVEL_AND) for m in r.members), _LEVEL_ALT
    elif isinstance(r, And):
        text, own = "&".join(_render(m, _LEVEL_CAT) for m in r.members), _LEVEL_AND
    elif isinstance(r, Concat):
        chain = []
        node: Ere = r
        while isinstance(node, Concat):
            chain.append(node.head)
            node = node.tail
        chain.append(node)
        text, own = "".join(_render(m, _LEVEL_NEG) for m in chain), _LEVEL_CAT
    elif isinstance(r, Not):
        text, own = "!" + _render(r.inner, _LEVEL_NEG), _LEVEL_NEG
    elif isinstance(r, Star):
        text, own = _render(r.inner, _LEVEL_ATOM) + "*", _LEVEL_POST
    else:
        raise TypeError(r)
    if own < level:
        return "(" + text + ")"
    return text
