import pytest

from symre.alphabet import AlgebraError
from symre.containment import Checker, membership
from symre.regexalg import RegexAlgebra
from symre.syntax import ExprBuilder


@pytest.fixture
def alg():
    return RegexAlgebra("ab")


def test_set_operations_are_semantic(alg):
    starts_a = alg.set_of("a(a|b)*")
    anything = alg.set_of("(a|b)*")
    assert alg.is_subset(starts_a, anything)
    assert not alg.is_subset(anything, starts_a)
    assert alg.is_equal(alg.union(starts_a, alg.complement(starts_a)), alg.top())
    assert alg.is_empty(alg.intersect(starts_a, alg.complement(starts_a)))
    # structurally different, semantically equal
    assert alg.is_equal(alg.set_of("a|b"), alg.set_of("b|a"))
    assert alg.is_equal(alg.set_of("(ab)*a"), alg.set_of("a(ba)*"))


def test_contains_words(alg):
    starts_a = alg.set_of("a(a|b)*")
    assert alg.contains(starts_a, "ab")
    assert not alg.contains(starts_a, "ba")
    assert not alg.contains(alg.bottom(), "")


def test_pick_witness_is_shortlex_least(alg):
    assert alg.pick_witness(alg.set_of("b|aa")) == "b"
    assert alg.pick_witness(alg.set_of("a(a|b)*")) == "a"
    assert alg.pick_witness(alg.set_of("bb|ba")) == "ba"
    assert alg.pick_witness(alg.set_of("(a|b)*")) == ""
    assert alg.pick_witness(alg.complement(alg.set_of("()|a|b"))) == "aa"
    with pytest.raises(AlgebraError):
        alg.pick_witness(alg.set_of("a&b"))


def test_no_class_syntax(alg):
    with pytest.raises(AlgebraError):
        alg.class_set([(0, 1)], False)


def test_containment_over_word_symbols(alg):
    # access-path style: a path is a sequence of field names, each field
    # name set is an inner expression
    b = ExprBuilder(alg)
    get_fields = b.literal(alg.set_of("a(a|b)*"))  # fields starting with a
    any_field = b.literal(alg.top())
    chk = Checker(b)
    assert chk.check(get_fields, any_field).holds
    assert chk.check(
        b.concat(get_fields, b.star(get_fields)), b.star(any_field)
    ).holds
    verdict = chk.check(any_field, get_fields)
    assert not verdict.holds
    assert isinstance(verdict.witness, tuple)
    assert membership(b, verdict.witness, any_field)
    assert not membership(b, verdict.witness, get_fields)


def test_witness_paths_are_word_tuples(alg):
    b = ExprBuilder(alg)
    one = b.literal(alg.set_of("ab|b"))
    two = b.literal(alg.set_of("b"))
    verdict = Checker(b).check(b.concat(one, two), b.concat(two, two))
    assert not verdict.holds
    assert verdict.witness == ("ab", "b")
    assert alg.format_word(verdict.witness) == "ab/b"


def test_format_set(alg):
    # (a|b) merges to the full inner class, which renders as '.'
    assert alg.format_set(alg.set_of("a(a|b)*")) == "{a.*}"
    assert alg.format_set(alg.bottom()) == "{[]}"
