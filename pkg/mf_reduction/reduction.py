# -*- coding: utf-8 -*-
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from tqdm import tqdm

from mf_reduction.errors import (BadDepth, InvalidCap, IrreducibilityAssertionFailed, NodeCapExceeded, ThreeOreViolation,
                                 TrivialElement)
from mf_reduction.multifraction import (Multifraction, RuleId, apply_Rtimes, atom_reducts, is_irreducible, max_step,
                                        mf_product)
from mf_reduction.presentation import Element, inverse_signed

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 20000


def universal_sequence(n):
    ''' (1, 2, ..., n-1) followed by the sequence for n-2; empty for n <= 1 '''
    if n < 0:
        raise BadDepth("depth must be non-negative, got %d" % n)
    levels = []
    while n > 1:
        levels.extend(range(1, n))
        n -= 2
    return levels


def sigma_sequence(m):
    ''' (m, m-2, ..., 2) for m even, (m, m-2, ..., 1) for m odd '''
    return list(range(m, 0, -2))


@dataclass(frozen=True)
class Application:
    ''' one R_i^max step of a schedule, kept even when x = 1 '''
    level: int
    parameter: Element
    complement: Element
    before: Multifraction
    after: Multifraction

    @property
    def trivial(self):
        return self.parameter.is_identity


@dataclass
class ReductionTrace:
    initial: Multifraction
    applications: List[Application] = field(default_factory=list)
    steps: List[Tuple[RuleId, Multifraction]] = field(default_factory=list)
    final: Optional[Multifraction] = None

    def record(self, level, parameter, complement, before, after):
        application = Application(level, parameter, complement, before, after)
        self.applications.append(application)
        if not application.trivial:
            self.steps.append((RuleId.rix(level, parameter), after))

    def record_rtimes(self, after):
        self.steps.append((RuleId.rtimes(), after))

    def lines(self):
        return ["%s %s" % (rule, snapshot) for rule, snapshot in self.steps]


@dataclass(frozen=True)
class NormalForm:
    mf: Multifraction

    @property
    def depth(self):
        return self.mf.depth

    @property
    def denominator(self):
        if self.mf.is_empty:
            raise TrivialElement("the trivial element has no denominator")
        return self.mf.entries[-1]

    def __str__(self):
        return str(self.mf)


def depth(nf):
    return nf.depth


def denominator(nf):
    return nf.denominator


class Decision(Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


class Reducer:
    '''
        reduction of multifractions over one gcd-monoid.
        the universal strategy needs the 3-Ore condition: it is checked once, lazily, unless assume_3ore is set,
        in which case a failure only surfaces when a maximal step meets a witness.
    '''

    def __init__(self, monoid, assume_3ore=False, node_cap=DEFAULT_NODE_CAP, jobs=1, progress=False):
        if node_cap <= 0:
            raise InvalidCap("node_cap must be positive, got %d" % node_cap)
        self.monoid = monoid
        self.presentation = monoid.presentation
        self.assume_3ore = assume_3ore
        self.node_cap = node_cap
        self.jobs = jobs
        self.progress = progress
        self._ore_report = None

    @property
    def ore_report(self):
        if self._ore_report is None:
            from mf_reduction.ore import check_3ore
            self._ore_report = check_3ore(self.monoid, jobs=self.jobs, progress=self.progress)
        return self._ore_report

    def require_3ore(self):
        if self.assume_3ore:
            return
        report = self.ore_report
        if not report.satisfies_3ore:
            raise ThreeOreViolation(report.witness, side=report.witness_side)

    #~~~~~~~~~ strategy ~~~~~~~~~

    def reduce_along(self, a, schedule, trace=None):
        trace = trace or ReductionTrace(a)
        current = a
        for level in schedule:
            x_max, complement, reduct = max_step(self.monoid, current, level)
            trace.record(level, x_max, complement, current, reduct)
            current = reduct
        trace.final = current
        return current, trace

    def reduce_universal(self, a: Multifraction) -> Tuple[Multifraction, ReductionTrace]:
        self.require_3ore()
        trace = ReductionTrace(a)
        if is_irreducible(self.monoid, a):
            trace.final = a
            return a, trace
        schedule = universal_sequence(a.depth)
        logger.debug("reducing %s along %s", a, schedule)
        return self.reduce_along(a, schedule, trace)

    def reduce_hat(self, a: Multifraction) -> Tuple[NormalForm, ReductionTrace]:
        current, trace = self.reduce_universal(a)
        stripped = apply_Rtimes(current)
        while stripped is not None:
            trace.record_rtimes(stripped)
            current = stripped
            stripped = apply_Rtimes(current)
        trace.final = current
        if not is_irreducible(self.monoid, current):
            raise IrreducibilityAssertionFailed("%s is still reducible after the universal strategy" % current)
        return NormalForm(current), trace

    #~~~~~~~~~ word problem ~~~~~~~~~

    def normal_form(self, w):
        return self.reduce_hat(self.presentation.parse_signed(w))[0]

    def inverse_normal_form(self, w):
        return self.normal_form(inverse_signed(w))

    def is_identity(self, w):
        return self.normal_form(w).mf.is_empty

    def group_equal(self, w1, w2):
        return self.normal_form(w1) == self.normal_form(w2)

    def multiply_nf(self, g, h):
        return self.reduce_hat(mf_product(g.mf, h.mf))[0]

    #~~~~~~~~~ exhaustive oracle ~~~~~~~~~

    def naive_reduce(self, a, node_cap=None) -> FrozenSet[Multifraction]:
        '''
            explores every atom reduction path from a and returns the irreducible leaves, R_x included.
            works without the 3-Ore condition; more than one leaf shows non-confluence.
        '''
        node_cap = node_cap or self.node_cap
        visited = {a}
        frontier = [a]
        leaves = set()
        bar = tqdm(total=node_cap, desc="naive reduction", disable=not self.progress)
        executor = ThreadPoolExecutor(max_workers=self.jobs) if self.jobs > 1 else None
        try:
            while frontier:
                if executor is not None:
                    expanded = list(executor.map(lambda b: atom_reducts(self.monoid, b), frontier))
                else:
                    expanded = [atom_reducts(self.monoid, b) for b in frontier]
                next_frontier = []
                for b, reducts in zip(frontier, expanded):
                    if not reducts:
                        leaves.add(b)
                    for _, c in reducts:
                        if c in visited:
                            continue
                        visited.add(c)
                        next_frontier.append(c)
                        if len(visited) > node_cap:
                            raise NodeCapExceeded("more than %d multifractions reachable from %s" % (node_cap, a))
                bar.update(len(next_frontier))
                frontier = next_frontier
        finally:
            bar.close()
            if executor is not None:
                executor.shutdown()
        logger.debug("naive reduction of %s: %d nodes, %d leaves", a, len(visited), len(leaves))
        return frozenset(leaves)

    def decide_identity(self, w, exhaustive=False):
        ''' (decision, method); uses the exhaustive oracle when asked to or when the 3-Ore condition fails '''
        a = self.presentation.parse_signed(w)
        if not exhaustive:
            try:
                nf, _ = self.reduce_hat(a)
                return (Decision.TRUE if nf.mf.is_empty else Decision.FALSE), "universal"
            except ThreeOreViolation as e:
                logger.warning("%s; falling back to exhaustive reduction", e)
        try:
            leaves = self.naive_reduce(a)
        except NodeCapExceeded as e:
            logger.warning("%s", e)
            return Decision.UNDECIDED, "naive"
        if Multifraction((), self.presentation) in leaves:
            return Decision.TRUE, "naive"
        if len(leaves) == 1:
            return Decision.FALSE, "naive"
        return Decision.UNDECIDED, "naive"
