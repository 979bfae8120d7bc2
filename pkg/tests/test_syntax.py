import random

import pytest

from symre.alphabet import BitsetAlgebra, IntervalAlgebra
from symre.syntax import (
    And,
    Concat,
    Epsilon,
    ExprBuilder,
    Literal,
    ParseError,
    Star,
    Union,
    parse_class_text,
    parse_raw,
    raw_size,
    raw_width,
    size,
    to_text,
    unescape_word,
    width,
)

from exprgen import random_raw


@pytest.fixture
def b():
    return ExprBuilder(BitsetAlgebra("abc"))


# -- normalization rules -----------------------------------------------------


def test_union_aci_and_literal_merge(b):
    merged = b.union(b.char("a"), b.union(b.char("b"), b.char("a")))
    assert isinstance(merged, Literal)
    assert b.algebra.members(merged.symbols) == ("a", "b")
    assert b.union(b.char("a"), b.char("b")) is b.union(b.char("b"), b.char("a"))


def test_union_drops_empty_literal(b):
    a = b.char("a")
    assert b.union(a, b.bottom()) is a
    assert b.union(b.bottom(), b.bottom()) is b.bottom()


def test_concat_rules(b):
    a, c = b.char("a"), b.char("c")
    assert b.concat(b.bottom(), a) is b.bottom()
    assert b.concat(a, b.bottom()) is b.bottom()
    assert b.concat(b.epsilon(), a) is a
    assert b.concat(a, b.epsilon()) is a
    left = b.concat(b.concat(a, c), a)
    right = b.concat(a, b.concat(c, a))
    assert left is right
    assert isinstance(left, Concat) and not isinstance(left.head, Concat)


def test_star_rules(b):
    a = b.char("a")
    assert b.star(b.star(a)) is b.star(a)
    assert b.star(b.epsilon()) is b.epsilon()
    assert b.star(b.bottom()) is b.epsilon()


def test_and_rules(b):
    a, c = b.char("a"), b.char("c")
    assert b.and_(a, b.bottom()) is b.bottom()
    assert b.and_(a, a) is a
    assert b.and_(a, c) is b.and_(c, a)
    # literals under & are kept separate, unlike union
    both = b.and_(a, c)
    assert isinstance(both, And) and len(both.members) == 2


def test_double_negation(b):
    a = b.char("a")
    assert b.not_(b.not_(a)) is a


def test_canonical_empty_and_universal(b):
    assert b.parse("[]") is b.bottom()
    assert isinstance(b.bottom(), Literal)
    sigma = b.sigma_star()
    assert isinstance(sigma, Star) and isinstance(sigma.inner, Literal)
    assert b.parse(".*") is sigma


def _rebuild(b, r):
    if isinstance(r, Epsilon):
        return b.epsilon()
    if isinstance(r, Literal):
        return b.literal(r.symbols)
    if isinstance(r, Union):
        return b.union(*(_rebuild(b, m) for m in r.members))
    if isinstance(r, And):
        return b.and_(*(_rebuild(b, m) for m in r.members))
    if isinstance(r, Concat):
        return b.concat(_rebuild(b, r.head), _rebuild(b, r.tail))
    if isinstance(r, Star):
        return b.star(_rebuild(b, r.inner))
    return b.not_(_rebuild(b, r.inner))


def test_normalization_idempotent(b):
    rng = random.Random(4)
    for _ in range(400):
        r = b.build(random_raw(rng, b.algebra, 9))
        assert _rebuild(b, r) is r


# -- language preservation ----------------------------------------------------


def _raw_slice(raw, symbols, n):
    """Independent semantics for raw trees, straight from the set equations."""
    tag = raw[0]
    if tag == "eps":
        return {""}
    if tag == "lit":
        alg = raw[1].algebra
        return {c for c in symbols if alg.contains(raw[1], c)} if n else set()
    if tag == "union":
        return _raw_slice(raw[1], symbols, n) | _raw_slice(raw[2], symbols, n)
    if tag == "and":
        return _raw_slice(raw[1], symbols, n) & _raw_slice(raw[2], symbols, n)
    if tag == "not":
        every = {""}
        for _ in range(n):
            every |= {w + c for w in every for c in symbols}
        return every - _raw_slice(raw[1], symbols, n)
    if tag == "concat":
        left, right = _raw_slice(raw[1], symbols, n), _raw_slice(raw[2], symbols, n)
        return {u + v for u in left for v in right if len(u) + len(v) <= n}
    assert tag == "star"
    base = _raw_slice(raw[1], symbols, n)
    words = {""}
    while True:
        grown = {u + v for u in words for v in base if v and len(u) + len(v) <= n}
        if grown <= words:
            return words
        words |= grown


def test_normalization_preserves_language():
    alg = BitsetAlgebra("ab")
    b = ExprBuilder(alg)
    from symre.oracle import SliceOracle

    oracle = SliceOracle(b, 6)
    rng = random.Random(11)
    for _ in range(300):
        raw = random_raw(rng, alg, 9)
        assert oracle.slice(b.build(raw)) == frozenset(_raw_slice(raw, alg.symbols, 6))


# -- nullable ------------------------------------------------------------------


def test_nullable_table(b):
    a = b.char("a")
    assert b.epsilon().nullable
    assert not a.nullable
    assert b.star(a).nullable
    assert b.not_(a).nullable
    assert not b.and_(b.epsilon(), a).nullable
    assert b.union(a, b.epsilon()).nullable
    assert not b.concat(a, b.star(a)).nullable
    assert b.concat(b.star(a), b.star(a)).nullable is True


def test_nullable_matches_slice():
    alg = BitsetAlgebra("ab")
    b = ExprBuilder(alg)
    from symre.oracle import SliceOracle

    oracle = SliceOracle(b, 4)
    rng = random.Random(12)
    for _ in range(300):
        r = b.build(random_raw(rng, alg, 8))
        assert r.nullable == ("" in oracle.slice(r))


# -- metrics -------------------------------------------------------------------


def test_size_and_width(b):
    assert size(b.epsilon()) == 1
    raw = parse_raw("a|b*", b.algebra)
    assert raw_size(raw) == 4 and raw_width(raw) == 2
    built = b.build(raw)
    assert size(built) == 4 and width(built) == 2
    assert width(b.and_(b.char("a"), b.char("b"))) == 2
    # merging can shrink the normalized metrics relative to the raw tree
    raw2 = parse_raw("(a|b)|c", b.algebra)
    assert raw_size(raw2) == 5 and size(b.build(raw2)) == 1


# -- parser ---------------------------------------------------------------------


def test_parse_merges_union_literals(b):
    r = b.parse("(a|b)|c")
    assert isinstance(r, Literal)
    assert b.algebra.members(r.symbols) == ("a", "b", "c")


def test_parse_intersection_of_concats(b):
    r = b.parse("(ac)&(bc)")
    assert isinstance(r, And)
    assert all(isinstance(m, Concat) for m in r.members)


def test_parse_precedence(b):
    # postfix * binds tightest, then prefix !, then juxtaposition, & and |
    assert b.parse("!a*") is b.not_(b.star(b.char("a")))
    assert b.parse("!([a-c])*") is b.not_(b.star(b.literal(b.algebra.top())))
    assert b.parse("a|b&c") is b.union(b.char("a"), b.and_(b.char("b"), b.char("c")))
    assert b.parse("ab&c") is b.and_(b.concat(b.char("a"), b.char("b")), b.char("c"))
    assert b.parse("a!b") is b.concat(b.char("a"), b.not_(b.char("b")))


def test_parse_atoms(b):
    assert b.parse("()") is b.epsilon()
    assert b.parse("[]") is b.bottom()
    assert isinstance(b.parse("[^]"), Literal)
    assert b.parse("[^]").symbols == b.algebra.top()
    assert b.parse(".").symbols == b.algebra.top()
    assert b.parse("\\*") is b.literal(b.algebra.class_set([(ord("*"), ord("*"))], False))


def test_parse_classes():
    alg = IntervalAlgebra()
    b = ExprBuilder(alg)
    assert b.parse("[a-z]").symbols.intervals == ((ord("a"), ord("z")),)
    assert b.parse("[^a-z]").symbols == alg.class_set([(ord("a"), ord("z"))], True)
    assert b.parse("[a-cx]").symbols.intervals == ((ord("a"), ord("c")), (ord("x"), ord("x")))
    assert b.parse("[\\]]").symbols.intervals == ((ord("]"), ord("]")),)
    assert b.parse("[\\u{41}]").symbols.intervals == ((0x41, 0x41),)
    assert b.parse("\\u{41}") is b.parse("A")


@pytest.mark.parametrize(
    "text,pos",
    [
        ("(a", 2),
        ("a|", 2),
        ("[ab", 3),
        ("a)", 1),
        ("*a", 0),
        ("[a-]", 3),
        ("!\\u{xyz}", 4),
        ("", 0),
    ],
)
def test_parse_errors_carry_position(b, text, pos):
    with pytest.raises(ParseError) as err:
        b.parse(text)
    assert err.value.position == pos


def test_parse_class_text(b):
    assert parse_class_text("[ab]", b.algebra) == b.algebra.from_chars("ab")
    assert parse_class_text("a", b.algebra) == b.algebra.from_chars("a")
    assert parse_class_text(".", b.algebra) == b.algebra.top()
    with pytest.raises(ParseError):
        parse_class_text("[ab] ", b.algebra)


def test_unescape_word():
    assert unescape_word("ab\\u{63}") == "abc"
    assert unescape_word("\\\\") == "\\"


# -- interning and rendering -----------------------------------------------------


def test_interning_is_structural(b):
    assert b.parse("a(b|c)") is b.parse("a(c|b)")
    assert b.parse("a").eid != b.parse("b").eid
    other = ExprBuilder(BitsetAlgebra("abc"))
    assert other.parse("a") is not b.parse("a")


def test_render_parse_round_trip():
    alg = BitsetAlgebra("abc")
    b = ExprBuilder(alg)
    rng = random.Random(13)
    for _ in range(400):
        r = b.build(random_raw(rng, alg, 10))
        assert b.parse(to_text(r)) is r


def test_render_spot_checks(b):
    assert to_text(b.parse("!(ab)*")) == "!(ab)*"
    assert to_text(b.parse("(a|b*)&!c")) in ("(a|b*)&!c", "(b*|a)&!c")
    assert to_text(b.epsilon()) == "()"
    assert to_text(b.bottom()) == "[]"
