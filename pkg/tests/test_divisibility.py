from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mf_reduction.divisibility import GcdMonoid, LcmStrategy, Side, left_lcm, right_lcm
from mf_reduction.errors import (AmbiguousQuotient, BasicClosureDiverges, InvalidCap, NotADivisor, NotConditionalLcm,
                                 SupportIllDefined)
from mf_reduction.presentation import Presentation, validate_presentation
from mf_reduction.presets import braid


def names(elements):
    return {str(e) for e in elements}


def words(max_size, letters=2):
    return st.lists(st.integers(0, letters - 1), max_size=max_size).map(tuple)


def test_divisibility_in_braid(braid3):
    m = braid3.monoid
    a, b, aba = m.element("a"), m.element("b"), m.element("aba")
    assert m.left_divides(a, aba) and m.left_divides(b, aba)
    assert m.right_divides(b, aba)
    assert not m.left_divides(b, m.element("ab"))
    assert names(m.left_divisors(aba)) == {"1", "a", "b", "ab", "ba", "aba"}
    assert str(m.left_quotient(b, aba)) == "ab"
    assert str(m.right_quotient(b, m.element("ab"))) == "a"
    with pytest.raises(NotADivisor):
        m.left_quotient(b, m.element("ab"))


def test_gcds(braid3):
    m = braid3.monoid
    aba, ba = m.element("aba"), m.element("ba")
    assert str(m.right_gcd(aba, ba)) == "ba"
    assert str(m.left_gcd(aba, m.element("ab"))) == "ab"
    assert str(m.left_gcd(aba, ba)) == "ba"
    assert m.is_coprime_pair(m.element("ab"), ba)
    assert not m.is_coprime_pair(aba, ba)
    assert m.is_coprime_pair(m.element("a"), m.element("b"), Side.LEFT)


def test_lcms_in_braid(braid3):
    m = braid3.monoid
    a, b = m.element("a"), m.element("b")
    right = m.right_lcm(a, b)
    assert str(right.lcm) == "aba"
    assert (str(right.right_complement), str(right.left_complement)) == ("ba", "ab")
    left = m.left_lcm(a, b)
    assert str(left.lcm) == "aba"
    assert (str(left.right_complement), str(left.left_complement)) == ("ab", "ba")
    same = m.right_lcm(a, a)
    assert same.lcm == a and same.left_complement.is_identity and same.right_complement.is_identity
    assert m.right_lcm(m.one, b).lcm == b


def test_missing_lcms(affine_a2, free2):
    m = affine_a2.monoid
    assert str(m.right_lcm(m.element("a"), m.element("c")).lcm) == "aca"
    assert m.right_lcm(m.element("aba"), m.element("c")) is None
    assert free2.monoid.right_lcm(free2.monoid.element("a"), free2.monoid.element("b")) is None


def test_basic_elements(braid3, affine_a2, free2):
    table = braid3.monoid.table
    assert names(table.right_basics) == {"1", "a", "b", "ab", "ba"}
    assert names(table.left_basics) == {"1", "a", "b", "ab", "ba"}
    assert table.C == 2

    table = affine_a2.monoid.table
    assert len(table.all_basics()) == 10
    assert names(table.all_basics()) == {"1", "a", "b", "c", "ab", "ba", "bc", "cb", "ac", "ca"}
    assert table.C == 2

    assert free2.monoid.table.C == 1
    assert names(free2.monoid.table.all_basics()) == {"1", "a", "b"}


def test_word_reversing(braid3):
    m = braid3.monoid
    assert m.reverse_right((0,), (1,)) == ((1, 0), (0, 1))
    assert m.reverse_right((0,), (0,)) == ((), ())
    v1, u1 = m.reverse_left((0,), (1,))
    assert m.presentation.words_equal(v1 + (0,), u1 + (1,))

    p = validate_presentation(braid(3))
    fast = GcdMonoid(p, use_reversing=True)
    assert fast.right_lcm(fast.element("a"), fast.element("bb")) == m.right_lcm(m.element("a"), m.element("bb"))


def test_reversing_without_common_multiple(affine_a2):
    m = affine_a2.monoid
    aba, c = m.element("aba").word, m.element("c").word
    assert m.reverse_right(aba, c) is None


def test_basic_closure_is_closed(braid3, affine_a2):
    for reducer in (braid3, affine_a2):
        m = reducer.monoid
        right, left = m.table.right_basics, m.table.left_basics
        for x, y in product(right, repeat=2):
            found = m.right_lcm(x, y)
            if found is not None:
                assert found.left_complement in right and found.right_complement in right
        for x, y in product(left, repeat=2):
            found = m.left_lcm(x, y)
            if found is not None:
                assert found.left_complement in left and found.right_complement in left


def test_closure_caps_apply_to_every_call():
    m = GcdMonoid(validate_presentation(braid(3)))
    assert m.table.C == 2
    assert len(m.basic_closure(size_cap=5).right_basics) == 5
    with pytest.raises(BasicClosureDiverges):
        m.basic_closure(size_cap=3)
    with pytest.raises(BasicClosureDiverges):
        m.right_basic_closure(length_cap=1)


def test_atom_lcm_through_nested_relations():
    # s and t are only linked through m; their lcm needs three further levels of relations
    p = validate_presentation(Presentation.from_names(list("stmxyuvanbcdekfghpq"), [
        ("sx", "my"), ("mu", "tv"),
        ("ya", "nb"), ("nc", "ud"),
        ("be", "kf"), ("kg", "ch"),
        ("fp", "gq"),
    ]))
    m = GcdMonoid(p)
    s, t = m.element("s"), m.element("t")
    t1, s1 = m.atom_lcm(s.word[0], t.word[0])
    assert (m.canonical(t1), m.canonical(s1)) == (m.element("xaep"), m.element("vdhq"))
    assert p.words_equal(s.word + t1, t.word + s1)
    assert m.atom_lcm(m.element("y").word[0], m.element("u").word[0]) is not None
    assert m.atom_lcm(s.word[0], m.element("x").word[0]) is None


def test_strict_lcm_checks_longer_common_multiples():
    # ac is the shortest common multiple of a and b, but it does not divide aef = bgh
    p = validate_presentation(Presentation.from_names(list("abcdefghxy"), [("ac", "bd"), ("aef", "bgh"), ("xyx", "yxy")]))
    m = GcdMonoid(p)
    a, b = m.element("a"), m.element("b")
    assert m.table.C == 2
    assert str(m.right_lcm(a, b).lcm) == "ac"
    with pytest.raises(NotConditionalLcm, match="does not divide"):
        right_lcm(m, a, b)
    with pytest.raises(NotConditionalLcm, match="does not divide"):
        m.right_lcm(a, b, strategy=LcmStrategy.EXHAUSTIVE)
    assert str(left_lcm(m, m.element("x"), m.element("y")).lcm) == "xyx"


def test_support():
    m = GcdMonoid(validate_presentation(braid(3)))
    assert {atom.name for atom in m.support(m.element("aba"))} == {"a", "b"}
    twisted = GcdMonoid(validate_presentation(Presentation.from_names(["a", "b", "c"], [("ab", "ca")])))
    with pytest.raises(SupportIllDefined):
        twisted.support(twisted.element("ab"))


def test_evidence_against_the_gcd_assumption():
    non_cancellative = GcdMonoid(validate_presentation(Presentation.from_names(["a", "b", "c"], [("ab", "ac")])))
    with pytest.raises(AmbiguousQuotient):
        non_cancellative.left_quotient(non_cancellative.element("a"), non_cancellative.element("ab"))

    two_minimal = GcdMonoid(validate_presentation(Presentation.from_names(["a", "b", "c", "d"], [("ac", "bd"), ("ad", "bc")])))
    with pytest.raises(NotConditionalLcm):
        two_minimal.atom_lcm(0, 1)


def test_invalid_caps():
    with pytest.raises(InvalidCap):
        GcdMonoid(validate_presentation(braid(3)), size_cap=0)


@given(words(3), words(3))
@settings(max_examples=200, deadline=None)
def test_lcm_complements_are_coprime(braid3, u, v):
    m = braid3.monoid
    a, b = m.canonical(u), m.canonical(v)
    result = m.right_lcm(a, b)
    assert result is not None
    assert result.lcm == a * result.right_complement == b * result.left_complement
    assert m.right_gcd(result.left_complement, result.right_complement).is_identity
    assert m.left_divides(a, result.lcm) and m.left_divides(b, result.lcm)


@given(words(2), words(2))
@settings(max_examples=100, deadline=None)
def test_exhaustive_search_agrees(braid3, u, v):
    m = braid3.monoid
    a, b = m.canonical(u), m.canonical(v)
    assert m.right_lcm(a, b, strategy=LcmStrategy.EXHAUSTIVE) == m.right_lcm(a, b)


@given(words(2), words(2), words(2))
@settings(max_examples=200, deadline=None)
def test_iterated_lcm(braid3, u, v, w):
    m = braid3.monoid
    a, b, c = m.canonical(u), m.canonical(v), m.canonical(w)
    ab = m.right_lcm(a, b)
    a_rest = ab.left_complement
    tail = m.right_lcm(a_rest, c)
    assert m.right_lcm(a, b * c).lcm == a * ab.right_complement * tail.right_complement


def elements_up_to(monoid, length):
    return {monoid.canonical(w) for k in range(length + 1) for w in product(range(monoid.presentation.size), repeat=k)}


@given(words(2), words(2))
@settings(max_examples=50, deadline=None)
def test_coprime_factorization_is_the_lcm(braid3, u, v):
    m = braid3.monoid
    a, b = m.canonical(u), m.canonical(v)
    lcm = m.right_lcm(a, b).lcm
    candidates = elements_up_to(m, 3)
    for c, d in product(candidates, repeat=2):
        if m.presentation.words_equal(a.word + d.word, b.word + c.word) and m.right_gcd(c, d).is_identity:
            assert a * d == lcm


@given(words(3, letters=3), words(3, letters=3))
@settings(max_examples=200, deadline=None)
def test_reversing_agrees_with_lcm_in_raag(raag_abc, u, v):
    m = raag_abc.monoid
    found = m.reverse_right(u, v)
    if found is None:
        return
    result = m.right_lcm(m.canonical(u), m.canonical(v))
    assert m.presentation.words_equal(u + found[0], v + found[1])
    assert result is not None
    assert (m.canonical(found[0]), m.canonical(found[1])) == (result.right_complement, result.left_complement)


@given(words(3), words(3))
@settings(max_examples=200, deadline=None)
def test_reversing_agrees_with_lcm_in_braid(braid3, u, v):
    m = braid3.monoid
    found = m.reverse_right(u, v)
    result = m.right_lcm(m.canonical(u), m.canonical(v))
    assert found is not None
    assert (m.canonical(found[0]), m.canonical(found[1])) == (result.right_complement, result.left_complement)


def test_complement_support_in_affine_a2(affine_a2):
    m = affine_a2.monoid
    assert {atom.name for atom in m.support(m.element("ca"))} == {"a", "c"}
    found = m.right_lcm(m.element("a"), m.element("c"))
    assert found.lcm == m.element("c") * m.element("ac")
    assert m.support(found.left_complement) <= m.support(m.element("a")) | m.support(m.element("c"))


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_complements_stay_in_the_support(braid3, affine_a2, raag_abc, data):
    for reducer in (braid3, affine_a2, raag_abc):
        m = reducer.monoid
        letters = m.presentation.size
        a, b = (m.canonical(data.draw(words(3, letters))) for _ in range(2))
        found = m.right_lcm(a, b)
        if found is None:
            continue
        both = m.support(a) | m.support(b)
        assert m.support(found.left_complement) <= both
        assert m.support(found.right_complement) <= both
