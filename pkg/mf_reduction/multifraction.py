# -*- coding: utf-8 -*-
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from mf_reduction.errors import LevelOutOfRange, NotADivisor, PresentationSyntaxError, StepVerificationFailed, ThreeOreViolation
from mf_reduction.presentation import (Element, ValidatedPresentation, negative_signed,
                                       positive_signed)

logger = logging.getLogger(__name__)

SEPARATOR = "/"
EMPTY_TOKEN = "[]"


class RuleKind(Enum):
    RIX = "R"
    RTIMES = "Rx"


@dataclass(frozen=True)
class RuleId:
    kind: RuleKind
    level: int = 0
    parameter: Optional[Element] = None

    @classmethod
    def rix(cls, level, parameter):
        return cls(RuleKind.RIX, level, parameter)

    @classmethod
    def rtimes(cls):
        return cls(RuleKind.RTIMES)

    def __str__(self):
        if self.kind is RuleKind.RTIMES:
            return RuleKind.RTIMES.value
        return "%s %d %s" % (RuleKind.RIX.value, self.level, self.parameter)


@dataclass(frozen=True)
class Multifraction:
    '''
        a1/a2/.../an, read a1·a2⁻¹·a3·a4⁻¹··· in the enveloping group.
        level i is positive (odd) or negative (even); the empty multifraction has depth 0.
    '''
    entries: Tuple[Element, ...]
    presentation: ValidatedPresentation = field(compare=False, repr=False, default=None)

    @property
    def depth(self):
        return len(self.entries)

    @property
    def is_empty(self):
        return not self.entries

    def entry(self, i):
        ''' 1-based access '''
        return self.entries[i - 1]

    def __str__(self):
        if not self.entries:
            return EMPTY_TOKEN
        return SEPARATOR.join(str(e) for e in self.entries)

    @classmethod
    def parse(cls, text, presentation):
        text = text.strip()
        if text in (EMPTY_TOKEN, ""):
            return cls((), presentation)
        entries = []
        for part in text.split(SEPARATOR):
            if not part.strip():
                raise PresentationSyntaxError("empty entry in %r (write 1 for the identity)" % text)
            entries.append(presentation.element(part))
        return cls(tuple(entries), presentation)

    @classmethod
    def unit(cls, presentation, depth=1):
        return cls(tuple(presentation.identity for _ in range(depth)), presentation)

    def replace(self, changes):
        entries = list(self.entries)
        for i, value in changes.items():
            entries[i - 1] = value
        return Multifraction(tuple(entries), self.presentation)

    def to_signed(self):
        ''' a1 a2-bar a3 a4-bar ... as a signed word '''
        letters = ()
        for i, e in enumerate(self.entries, start=1):
            letters += positive_signed(e.word) if i % 2 == 1 else negative_signed(e.word)
        return letters


def serialize_blocks(a):
    return a.to_signed()


def mf_product(a, b):
    presentation = a.presentation or b.presentation
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    if a.depth % 2 == 0:
        return Multifraction(a.entries + b.entries, presentation)
    merged = a.entries[-1] * b.entries[0]
    return Multifraction(a.entries[:-1] + (merged,) + b.entries[1:], presentation)


def mf_inverse(a):
    ''' a multifraction representing the inverse group element '''
    backwards = tuple(reversed(a.entries))
    if a.depth % 2 == 0:
        return Multifraction(backwards, a.presentation)
    return Multifraction((a.presentation.identity,) + backwards, a.presentation)


#~~~~~~~~~ single rules ~~~~~~~~~

def _check_level(a, i):
    if not 1 <= i < a.depth:
        raise LevelOutOfRange("level %d outside 1..%d for %s" % (i, a.depth - 1, a))


def _verify(monoid, checks, a, i, x):
    if not monoid.check_steps:
        return
    for lhs, rhs in checks:
        if not monoid.presentation.words_equal(lhs, rhs):
            raise StepVerificationFailed("reducing %s at level %d by %s broke %s = %s" % (
                a, i, x, monoid.presentation.format_word(lhs), monoid.presentation.format_word(rhs)))


def divide(monoid, a, i, x):
    '''
        plain division: x left-divides a_i and a_(i+1) for i negative, right-divides both for i positive,
        and is removed from both.
    '''
    _check_level(a, i)
    left, right = a.entry(i), a.entry(i + 1)
    try:
        if i % 2 == 0:
            b_i, b_next = monoid.left_quotient(x, left), monoid.left_quotient(x, right)
        else:
            b_i, b_next = monoid.right_quotient(x, left), monoid.right_quotient(x, right)
    except NotADivisor:
        return None
    return a.replace({i: b_i, i + 1: b_next})


def reduce_at(monoid, a, i, x):
    ''' a • R_(i,x) with the remainder x' pushed into a_(i-1), or None when the rule is not defined '''
    _check_level(a, i)
    one = monoid.one
    if x.is_identity:
        return a, one

    if i == 1:
        if not (monoid.right_divides(x, a.entry(1)) and monoid.right_divides(x, a.entry(2))):
            return None
        b1, b2 = monoid.right_quotient(x, a.entry(1)), monoid.right_quotient(x, a.entry(2))
        _verify(monoid, [(b1.word + x.word, a.entry(1).word), (b2.word + x.word, a.entry(2).word)], a, i, x)
        return a.replace({1: b1, 2: b2}), one

    a_prev, a_i, a_next = a.entry(i - 1), a.entry(i), a.entry(i + 1)
    if i % 2 == 0:
        if not monoid.left_divides(x, a_next):
            return None
        lcm = monoid.right_lcm(x, a_i)
        if lcm is None:
            return None
        b_i, x_rest = lcm.right_complement, lcm.left_complement
        b_prev = monoid.canonical(a_prev.word + x_rest.word)
        b_next = monoid.left_quotient(x, a_next)
        _verify(monoid, [(x.word + b_i.word, a_i.word + x_rest.word),
                         (x.word + b_next.word, a_next.word)], a, i, x)
    else:
        if not monoid.right_divides(x, a_next):
            return None
        lcm = monoid.left_lcm(x, a_i)
        if lcm is None:
            return None
        b_i, x_rest = lcm.right_complement, lcm.left_complement
        b_prev = monoid.canonical(x_rest.word + a_prev.word)
        b_next = monoid.right_quotient(x, a_next)
        _verify(monoid, [(b_i.word + x.word, x_rest.word + a_i.word),
                         (b_next.word + x.word, a_next.word)], a, i, x)
    logger.debug("%s • R %d %s -> x' = %s", a, i, x, x_rest)
    return a.replace({i - 1: b_prev, i: b_i, i + 1: b_next}), x_rest


def apply_R(monoid, a, i, x):
    reduced = reduce_at(monoid, a, i, x)
    return None if reduced is None else reduced[0]


def apply_Rtimes(a):
    if a.is_empty or not a.entries[-1].is_identity:
        return None
    return Multifraction(a.entries[:-1], a.presentation)


#~~~~~~~~~ irreducibility ~~~~~~~~~

def is_level_irreducible(monoid, a, i):
    ''' no R_(i,x) with x != 1 applies; checking atoms suffices '''
    if i >= a.depth:
        return True
    if i == 1:
        return monoid.right_gcd(a.entry(1), a.entry(2)).is_identity
    a_i, a_next = a.entry(i), a.entry(i + 1)
    for atom in monoid.atoms:
        if i % 2 == 0:
            if monoid.left_divides(atom, a_next) and monoid.right_lcm(atom, a_i) is not None:
                return False
        elif monoid.right_divides(atom, a_next) and monoid.left_lcm(atom, a_i) is not None:
            return False
    return True


def is_irreducible(monoid, a):
    return all(is_level_irreducible(monoid, a, i) for i in range(1, a.depth))


def atom_reducts(monoid, a):
    ''' every one-step reduct by an atom rule or by R_x, ordered by level then atom '''
    reducts = []
    for i in range(1, a.depth):
        for atom in monoid.atoms:
            b = apply_R(monoid, a, i, atom)
            if b is not None:
                reducts.append((RuleId.rix(i, atom), b))
    stripped = apply_Rtimes(a)
    if stripped is not None:
        reducts.append((RuleId.rtimes(), stripped))
    return reducts


#~~~~~~~~~ maximal steps ~~~~~~~~~

def max_step(monoid, a, i):
    '''
        (x_max, x', a • R_(i,x_max)): x_max is the lcm of all x with a • R_(i,x) defined.
        divisors are folded by length then word; a pair whose joint lcm has no common multiple
        with a_i contradicts the 3-Ore condition.
    '''
    one = monoid.one
    if i >= a.depth:
        return one, one, a
    if i == 1:
        gcd = monoid.right_gcd(a.entry(1), a.entry(2))
        reduct, rest = reduce_at(monoid, a, 1, gcd)
        return gcd, rest, reduct

    a_i, a_next = a.entry(i), a.entry(i + 1)
    if i % 2 == 0:
        divisors, divides, lcm, side = monoid.left_divisors(a_next), monoid.left_divides, monoid.right_lcm, "right"
    else:
        divisors, divides, lcm, side = monoid.right_divisors(a_next), monoid.right_divides, monoid.left_lcm, "left"

    acc = one
    for x in sorted(divisors, key=Element.sort_key):
        if divides(x, acc) or lcm(x, a_i) is None:
            continue
        joint = lcm(acc, x)
        if joint is None or lcm(joint.lcm, a_i) is None:
            raise ThreeOreViolation((acc, x, a_i), side=side)
        acc = joint.lcm
    if acc.is_identity:
        return one, one, a
    reduct, rest = reduce_at(monoid, a, i, acc)
    return acc, rest, reduct


def r_i_max(monoid, a, i):
    x_max, _, reduct = max_step(monoid, a, i)
    return x_max, reduct


def parse_multifraction(presentation, text):
    return Multifraction.parse(text, presentation)

