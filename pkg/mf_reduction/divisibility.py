# -*- coding: utf-8 -*-
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Optional, Tuple

from mf_reduction.errors import (AmbiguousQuotient, BasicClosureDiverges, InvalidCap, LcmSearchExhausted,
                                 NotADivisor, NotConditionalLcm, NotGcdMonoid, SupportIllDefined)
from mf_reduction.presentation import Element, Word
from mf_reduction.presets import is_artin_tits

logger = logging.getLogger(__name__)

DEFAULT_SIZE_CAP = 10000
DEFAULT_LENGTH_CAP = 64
DEFAULT_SEARCH_CAP = 200000
REVERSING_STEP_FACTOR = 10

# (complement of u, complement of v): u·v1 = v·u1 = u ∨ v
Complements = Tuple[Word, Word]


class Side(Enum):
    RIGHT = "right"
    LEFT = "left"


class LcmStrategy(Enum):
    COMPLEMENT = "complement"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class LcmResult:
    '''
        right lcm: lcm = a·right_complement = b·left_complement.
        left lcm:  lcm = right_complement·a = left_complement·b.
    '''
    lcm: Element
    left_complement: Element
    right_complement: Element


@dataclass(frozen=True)
class BasicTable:
    right_basics: FrozenSet[Element]
    left_basics: FrozenSet[Element]
    C: int

    def all_basics(self):
        return sorted(self.right_basics | self.left_basics, key=Element.sort_key)


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


class GcdMonoid:
    '''
        divisibility, gcds and conditional lcms of the monoid presented by a validated presentation.
        left-side questions are answered by the opposite monoid, whose words are the reversed words.
    '''

    def __init__(self, presentation, size_cap=DEFAULT_SIZE_CAP, length_cap=DEFAULT_LENGTH_CAP,
                 search_cap=DEFAULT_SEARCH_CAP, strategy=LcmStrategy.COMPLEMENT, use_reversing=False, check_steps=True,
                 _opposite=None):
        for name, cap in (("size_cap", size_cap), ("length_cap", length_cap), ("search_cap", search_cap)):
            if cap <= 0:
                raise InvalidCap("%s must be positive, got %d" % (name, cap))
        self.presentation = presentation
        self.size_cap = size_cap
        self.length_cap = length_cap
        self.search_cap = search_cap
        self.strategy = strategy
        self.use_reversing = use_reversing
        self.check_steps = check_steps

        self.one = presentation.identity
        self.atoms = tuple(presentation.canonical((atom.id,)) for atom in presentation.atoms)

        self._lock = threading.Lock()
        self._left_divisors = {}
        self._right_divisors = {}
        self._atom_lcms = {}
        self._complements_cache = {}
        self._lcm_cache = {}
        self._right_closures = {}
        self._table = None
        self._opposite = _opposite

        # atoms joined by a relation whose sides start with them. s and t can only have a common
        # right multiple when a chain of such joins links them.
        self._components = _UnionFind(presentation.size)
        self._joining_length = {}
        self._artin_tits = is_artin_tits(presentation)
        for relation in presentation.relations:
            s, t = relation.lhs[0], relation.rhs[0]
            self._components.union(s, t)
            if s != t:
                key = frozenset((s, t))
                self._joining_length[key] = min(self._joining_length.get(key, len(relation.lhs)), len(relation.lhs))

    #~~~~~~~~~ plumbing ~~~~~~~~~

    @property
    def opposite(self):
        if self._opposite is None:
            self._opposite = GcdMonoid(self.presentation.opposite(), self.size_cap, self.length_cap, self.search_cap,
                                       self.strategy, self.use_reversing, self.check_steps, _opposite=self)
        return self._opposite

    def mirror(self, a):
        ''' the same element read backwards, as an element of the opposite monoid '''
        return self.opposite.presentation.canonical(tuple(reversed(a.word)))

    def element(self, text):
        return self.presentation.element(text)

    def canonical(self, word):
        return self.presentation.canonical(word)

    def _remember(self, cache, key, value):
        with self._lock:
            cache[key] = value
        return value

    @property
    def table(self):
        if self._table is None:
            self._table = self.basic_closure()
        return self._table

    #~~~~~~~~~ divisibility ~~~~~~~~~

    def left_divisors(self, a):
        cached = self._left_divisors.get(a.word)
        if cached is None:
            members = self.presentation.equivalence_class(a.word)
            prefixes = {w[:k] for w in members for k in range(len(a.word) + 1)}
            cached = self._remember(self._left_divisors, a.word, frozenset(self.canonical(p) for p in prefixes))
        return cached

    def right_divisors(self, a):
        cached = self._right_divisors.get(a.word)
        if cached is None:
            members = self.presentation.equivalence_class(a.word)
            suffixes = {w[k:] for w in members for k in range(len(a.word) + 1)}
            cached = self._remember(self._right_divisors, a.word, frozenset(self.canonical(s) for s in suffixes))
        return cached

    def left_divides(self, x, a):
        if x.length > a.length:
            return False
        return x.is_identity or x in self.left_divisors(a)

    def right_divides(self, x, a):
        if x.length > a.length:
            return False
        return x.is_identity or x in self.right_divisors(a)

    def left_quotient(self, x, a):
        ''' the y with x·y = a '''
        x_class = self.presentation.equivalence_class(x.word)
        k = x.length
        witnesses = {self.canonical(w[k:]) for w in self.presentation.equivalence_class(a.word) if w[:k] in x_class}
        return self._single_quotient(witnesses, x, a, "left")

    def right_quotient(self, x, a):
        ''' the y with y·x = a '''
        x_class = self.presentation.equivalence_class(x.word)
        cut = a.length - x.length
        witnesses = set()
        if cut >= 0:
            witnesses = {self.canonical(w[:cut]) for w in self.presentation.equivalence_class(a.word) if w[cut:] in x_class}
        return self._single_quotient(witnesses, x, a, "right")

    @staticmethod
    def _single_quotient(witnesses, x, a, side):
        if not witnesses:
            raise NotADivisor("%s is not a %s divisor of %s" % (x, side, a))
        if len(witnesses) > 1:
            shown = ", ".join(sorted(str(w) for w in witnesses))
            raise AmbiguousQuotient("%s divides %s in several ways (%s): the monoid is not cancellative" % (x, a, shown))
        return next(iter(witnesses))

    def right_gcd(self, a, b):
        return self._gcd(a, b, self.right_divisors, "right")

    def left_gcd(self, a, b):
        return self._gcd(a, b, self.left_divisors, "left")

    def _gcd(self, a, b, divisors, side):
        common = divisors(a) & divisors(b)
        top = max(c.length for c in common)
        for candidate in sorted(c for c in common if c.length == top):
            below = divisors(candidate)
            if all(d in below for d in common):
                return candidate
        raise NotGcdMonoid("%s and %s have no %s gcd" % (a, b, side))

    def is_coprime_pair(self, a, b, side=Side.RIGHT):
        gcd = self.right_gcd(a, b) if side is Side.RIGHT else self.left_gcd(a, b)
        return gcd.is_identity

    def support(self, a):
        if not self.presentation.is_artin_tits_style():
            raise SupportIllDefined("some relation has sides over different atom sets")
        return frozenset(self.presentation.atoms[letter] for letter in a.word)

    #~~~~~~~~~ lcm search ~~~~~~~~~

    def _has_left_divisor_in(self, word, divisor_class, k):
        return any(w[:k] in divisor_class for w in self.presentation.equivalence_class(word))

    def _quotient_word(self, prefix, whole):
        return self.left_quotient(self.canonical(prefix), self.canonical(whole)).word

    def _search_common_multiple(self, a, b, bound, strict=False):
        '''
            breadth-first search through the right multiples a·u, shortest first, for multiples of b.
            returns the complements of the unique minimal hit, or None when no hit has length <= bound.
        '''
        b_class = self.presentation.equivalence_class(b)
        k = len(b)
        frontier = {self.presentation.canonical_word(a)}
        visited = 0
        found = None
        for length in range(len(a), bound + 1):
            hits = sorted(w for w in frontier if length >= k and self._has_left_divisor_in(w, b_class, k))
            if found is None and hits:
                if len(hits) > 1:
                    shown = ", ".join(self.presentation.format_word(h) for h in hits)
                    raise NotConditionalLcm("%s and %s have several minimal common multiples: %s" % (
                        self.presentation.format_word(a), self.presentation.format_word(b), shown))
                found = hits[0]
                if not strict:
                    break
            elif found is not None:
                lcm = self.canonical(found)
                for hit in hits:
                    if not self.left_divides(lcm, self.canonical(hit)):
                        raise NotConditionalLcm("%s does not divide the common multiple %s" % (
                            lcm, self.presentation.format_word(hit)))
            if length == bound:
                break
            frontier = {self.presentation.canonical_word(w + (x,)) for w in frontier for x in range(self.presentation.size)}
            visited += len(frontier)
            if visited > self.search_cap:
                raise LcmSearchExhausted("lcm search for %s and %s visited more than %d elements" % (
                    self.presentation.format_word(a), self.presentation.format_word(b), self.search_cap))
        if found is None:
            return None
        return self._quotient_word(a, found), self._quotient_word(b, found)

    def atom_lcm(self, s, t):
        ''' complements (t1, s1) with s·t1 = t·s1 = s ∨ t, or None '''
        if s == t:
            return (), ()
        key = (s, t)
        if key in self._atom_lcms:
            return self._atom_lcms[key]
        joining = self._joining_length.get(frozenset(key))
        if self._components.find(s) != self._components.find(t):
            found = None
        elif joining is not None:
            # the joining relation is a common multiple, so the lcm is no longer
            found = self._search_common_multiple((s,), (t,), joining)
        elif self._artin_tits:
            # Artin-Tits atoms with no relation between them have no common multiple
            found = None
        else:
            found = self._search_common_multiple((s,), (t,), self.length_cap)
        with self._lock:
            self._atom_lcms[key] = found
            self._atom_lcms[(t, s)] = None if found is None else (found[1], found[0])
        return found

    def _complements(self, u, v, bound):
        '''
            lcm complements of two words composed from atom lcms, following a ∨ bc = a·b'c' where
            a ∨ b = b·a' = a·b' and a' ∨ c = a'·c' = c·a''.
            every intermediate lcm divides the final one, so the search stops once one is longer than bound.
            the flag is True when the answer None comes from the bound rather than from a missing atom lcm.
        '''
        if not u:
            return (v, ()), False
        if not v:
            return ((), u), False
        if max(len(u), len(v)) > bound:
            return None, True

        key = (u, v)
        cached = self._complements_cache.get(key)
        if cached is not None:
            result, cut, bound_used = cached
            if result is not None:
                return (result, False) if len(u) + len(result[0]) <= bound else (None, True)
            if not cut or bound <= bound_used:
                return None, cut

        if len(u) == 1 and len(v) == 1:
            result, cut = self.atom_lcm(u[0], v[0]), False
            if result is not None and 1 + len(result[0]) > bound:
                result, cut = None, True
        elif len(u) > 1:
            head, rest = u[:1], u[1:]
            result, cut = None, False
            first, cut = self._complements(head, v, bound)
            if first is not None:
                v1, h1 = first
                second, cut = self._complements(rest, v1, bound - len(head))
                if second is not None:
                    v2, r1 = second
                    result = (v2, h1 + r1)
                    if len(u) + len(v2) > bound:
                        result, cut = None, True
        else:
            swapped, cut = self._complements(v, u, bound)
            result = None if swapped is None else (swapped[1], swapped[0])

        self._remember(self._complements_cache, key, (result, cut, bound))
        return result, cut

    def reverse_right(self, u, v, step_cap=None):
        '''
            right reversing of u-bar·v: every s-bar·t becomes t1·s1-bar where s·t1 = t·s1 is the atom lcm.
            returns (v1, u1) with u·v1 = v·u1 once no negative letter precedes a positive one.
        '''
        if step_cap is None:
            step_cap = REVERSING_STEP_FACTOR * (len(u) + len(v))
        word = [(s, -1) for s in reversed(u)] + [(t, 1) for t in v]
        steps = 0
        while True:
            j = next((j for j in range(len(word) - 1) if word[j][1] < 0 < word[j + 1][1]), None)
            if j is None:
                break
            if steps >= step_cap:
                return None
            s, t = word[j][0], word[j + 1][0]
            if s == t:
                replacement = []
            else:
                pair = self.atom_lcm(s, t)
                if pair is None:
                    return None
                t1, s1 = pair
                replacement = [(x, 1) for x in t1] + [(x, -1) for x in reversed(s1)]
            word[j:j + 2] = replacement
            steps += 1
        positive = tuple(x for x, e in word if e > 0)
        negative = tuple(reversed([x for x, e in word if e < 0]))
        return positive, negative

    def reverse_left(self, u, v, step_cap=None):
        ''' mirror of reverse_right: (v1, u1) with v1·u = u1·v '''
        found = self.opposite.reverse_right(tuple(reversed(u)), tuple(reversed(v)), step_cap)
        if found is None:
            return None
        return tuple(reversed(found[0])), tuple(reversed(found[1]))

    def _certify(self, a, b, b1, a1):
        if not self.presentation.words_equal(a.word + b1, b.word + a1):
            raise NotConditionalLcm("%s·%s and %s·%s differ" % (a, self.presentation.format_word(b1),
                                                               b, self.presentation.format_word(a1)))
        a_complement, b_complement = self.canonical(a1), self.canonical(b1)
        if not self.right_gcd(a_complement, b_complement).is_identity:
            raise NotConditionalLcm("complements %s and %s of %s and %s are not coprime" % (
                a_complement, b_complement, a, b))
        return LcmResult(self.canonical(a.word + b1), a_complement, b_complement)

    def right_lcm(self, a: Element, b: Element, strategy=None, strict=False) -> Optional[LcmResult]:
        '''
            the exhaustive strategy, and any strict call, search the right multiples of a up to C·(ℓa + ℓb)
            and check that the minimal common multiple left-divides every longer one found there.
        '''
        if a.is_identity:
            return LcmResult(b, self.one, b)
        if b.is_identity:
            return LcmResult(a, a, self.one)
        strategy = strategy or self.strategy
        strict = strict or strategy is LcmStrategy.EXHAUSTIVE
        key = (a.word, b.word, strategy, strict)
        if key in self._lcm_cache:
            return self._lcm_cache[key]

        bound = self.table.C * (a.length + b.length)
        found = None
        if strict:
            found = self._search_common_multiple(a.word, b.word, bound, strict=True)
        else:
            if self.use_reversing:
                found = self.reverse_right(a.word, b.word)
                if found is not None and not self.presentation.words_equal(a.word + found[0], b.word + found[1]):
                    logger.debug("reversing candidate for %s, %s rejected", a, b)
                    found = None
            if found is None:
                found, _ = self._complements(a.word, b.word, bound)
        result = None if found is None else self._certify(a, b, found[0], found[1])
        return self._remember(self._lcm_cache, key, result)

    def left_lcm(self, a: Element, b: Element, strategy=None, strict=False) -> Optional[LcmResult]:
        mirrored = self.opposite.right_lcm(self.mirror(a), self.mirror(b), strategy, strict)
        if mirrored is None:
            return None
        back = self.opposite.mirror
        return LcmResult(back(mirrored.lcm), back(mirrored.left_complement), back(mirrored.right_complement))

    #~~~~~~~~~ basic elements ~~~~~~~~~

    def right_basic_closure(self, size_cap=None, length_cap=None):
        ''' closure of the atoms (and 1) under the right complement operation, cached per pair of caps '''
        size_cap = size_cap or self.size_cap
        length_cap = length_cap or self.length_cap
        cached = self._right_closures.get((size_cap, length_cap))
        if cached is not None:
            return cached

        atoms = range(self.presentation.size)
        basics = {()} | {(i,) for i in atoms}
        # lcm lengths are bounded by C·(ℓx + ℓy) with C the longest basic element; the pair
        # searches use the C known so far and are repeated whenever C grows.
        C = 1
        for s, t in combinations(atoms, 2):
            found = self.atom_lcm(s, t)
            if found is not None:
                C = max(C, len(found[0]), len(found[1]))
        examined = {}
        rounds = 0
        grew = True
        while grew:
            grew = False
            rounds += 1
            ordered = sorted(basics, key=lambda w: (len(w), w))
            for i, x in enumerate(ordered):
                if not x:
                    continue
                for y in ordered[i + 1:]:
                    bound = C * (len(x) + len(y))
                    if examined.get((x, y), 0) >= bound:
                        continue
                    examined[(x, y)] = bound
                    found, cut = self._complements(x, y, bound)
                    if found is None:
                        if cut:
                            logger.debug("no right lcm of %s and %s up to length %d",
                                         self.presentation.format_word(x), self.presentation.format_word(y), bound)
                        continue
                    for complement in found:
                        word = self.presentation.canonical_word(complement)
                        if len(word) > length_cap:
                            raise BasicClosureDiverges("basic element longer than %d" % length_cap)
                        if word not in basics:
                            basics.add(word)
                            C = max(C, len(word))
                            grew = True
                    if len(basics) > size_cap:
                        raise BasicClosureDiverges("more than %d basic elements" % size_cap)
        logger.debug("right basic closure: %d elements after %d rounds", len(basics), rounds)
        closure = frozenset(self.canonical(w) for w in basics)
        return self._remember(self._right_closures, (size_cap, length_cap), closure)

    def basic_closure(self, size_cap=None, length_cap=None):
        right = self.right_basic_closure(size_cap, length_cap)
        left = frozenset(self.opposite.mirror(e) for e in self.opposite.right_basic_closure(size_cap, length_cap))
        C = max(1, max(e.length for e in right | left))
        return BasicTable(right, left, C)


def left_divides(monoid: GcdMonoid, x, a):
    return monoid.left_divides(x, a)


def right_divides(monoid: GcdMonoid, x, a):
    return monoid.right_divides(x, a)


def right_lcm(monoid: GcdMonoid, a, b):
    ''' GcdMonoid.right_lcm with the strict check '''
    return monoid.right_lcm(a, b, strict=True)


def left_lcm(monoid: GcdMonoid, a, b):
    return monoid.left_lcm(a, b, strict=True)
