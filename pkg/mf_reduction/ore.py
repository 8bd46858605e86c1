# -*- coding: utf-8 -*-
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import List, Optional, Tuple

from tqdm import tqdm

from mf_reduction.divisibility import BasicTable
from mf_reduction.errors import NotArtinTits, SubsetBlowup
from mf_reduction.multifraction import Multifraction
from mf_reduction.presentation import Element
from mf_reduction.presets import is_artin_tits

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_CAP = 16

Triple = Tuple[Element, Element, Element]


@dataclass
class OreReport:
    satisfies_right_3ore: bool
    satisfies_left_3ore: bool
    right_2ore: bool
    left_2ore: bool
    basics_used: BasicTable
    # a pairwise compatible triple of basic elements without a common multiple; only set when 3-Ore fails
    witness: Optional[Triple] = None
    witness_side: Optional[str] = None
    conditional: bool = False

    @property
    def satisfies_3ore(self):
        return self.satisfies_right_3ore and self.satisfies_left_3ore

    @property
    def satisfies_2ore(self):
        return self.right_2ore and self.left_2ore


class FcClass(Enum):
    FC = "FC"
    NOT_FC = "NotFC"


@dataclass
class FcReport:
    fc_class: FcClass
    # (atoms of a pairwise compatible subset, its global lcm or None)
    subsets: List[Tuple[Tuple[Element, ...], Optional[Element]]] = field(default_factory=list)

    @property
    def is_fc(self):
        return self.fc_class is FcClass.FC


def _triple_fails(monoid, triple):
    ''' None when the triple is not pairwise compatible, else whether it lacks a common right multiple '''
    x, y, z = triple
    xy = monoid.right_lcm(x, y)
    if xy is None or monoid.right_lcm(y, z) is None or monoid.right_lcm(x, z) is None:
        return None
    return monoid.right_lcm(xy.lcm, z) is None


def _right_3ore_witness(monoid, basics, jobs=1, progress=False):
    ''' first triple, in the order of the sorted basics, that breaks the right 3-Ore condition '''
    candidates = [b for b in sorted(basics, key=Element.sort_key) if not b.is_identity]
    triples = list(combinations(candidates, 3))
    logger.debug("checking %d triples of %d basic elements", len(triples), len(candidates))
    bar = tqdm(total=len(triples), desc="3-Ore triples", disable=not progress)
    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                outcomes = list(executor.map(lambda t: _triple_fails(monoid, t), triples))
            bar.update(len(triples))
            for triple, failed in zip(triples, outcomes):
                if failed:
                    return triple
            return None
        for triple in triples:
            bar.update(1)
            if _triple_fails(monoid, triple):
                return triple
        return None
    finally:
        bar.close()


def _right_2ore(monoid, basics):
    candidates = sorted(basics, key=Element.sort_key)
    return all(monoid.right_lcm(x, y) is not None for x, y in combinations(candidates, 2))


def check_2ore(monoid):
    ''' (right, left): every two right (left) basic elements have a common right (left) multiple '''
    table = monoid.table
    opposite = monoid.opposite
    left_basics_mirrored = [monoid.mirror(b) for b in table.left_basics]
    return _right_2ore(monoid, table.right_basics), _right_2ore(opposite, left_basics_mirrored)


def check_3ore(monoid, jobs=1, progress=False):
    table = monoid.table
    right_witness = _right_3ore_witness(monoid, table.right_basics, jobs, progress)
    left_witness = None
    mirrored = _right_3ore_witness(monoid.opposite, [monoid.mirror(b) for b in table.left_basics], jobs, progress)
    if mirrored is not None:
        back = monoid.opposite.mirror
        left_witness = tuple(sorted((back(x) for x in mirrored), key=Element.sort_key))
    right_2ore, left_2ore = check_2ore(monoid)

    report = OreReport(
        satisfies_right_3ore=right_witness is None,
        satisfies_left_3ore=left_witness is None,
        right_2ore=right_2ore,
        left_2ore=left_2ore,
        basics_used=table,
        conditional=not is_artin_tits(monoid.presentation),
    )
    if right_witness is not None:
        report.witness, report.witness_side = right_witness, "right"
    elif left_witness is not None:
        report.witness, report.witness_side = left_witness, "left"
    if report.witness is not None:
        logger.info("3-Ore fails on the %s side: %s", report.witness_side, " ".join(str(x) for x in report.witness))
    return report


def classify_fc(monoid, report=None):
    if not is_artin_tits(monoid.presentation):
        raise NotArtinTits("relations are not all of the form sts... = tst...")
    report = report or check_3ore(monoid)
    return FcClass.FC if report.satisfies_3ore else FcClass.NOT_FC


def check_fc_direct(monoid, subset_cap=DEFAULT_SUBSET_CAP):
    ''' FC iff every set of pairwise compatible atoms has a global right lcm '''
    if not is_artin_tits(monoid.presentation):
        raise NotArtinTits("relations are not all of the form sts... = tst...")
    atoms = monoid.atoms
    if len(atoms) > subset_cap:
        raise SubsetBlowup("%d atoms give 2^%d subsets, above the cap of %d atoms" % (len(atoms), len(atoms), subset_cap))

    report = FcReport(FcClass.FC)
    for size in range(2, len(atoms) + 1):
        for subset in combinations(atoms, size):
            if any(monoid.right_lcm(x, y) is None for x, y in combinations(subset, 2)):
                continue
            delta = subset[0]
            for x in subset[1:]:
                joint = monoid.right_lcm(delta, x)
                if joint is None:
                    delta = None
                    break
                delta = joint.lcm
            report.subsets.append((subset, delta))
            if delta is None:
                report.fc_class = FcClass.NOT_FC
    return report


def non_confluent_witness(monoid, report):
    '''
        a multifraction with two distinct irreducible reducts, built from the 3-Ore witness (x, y, z):
        1/z/(x∨y) on the right side, 1/1/z/(x∨~y) on the left side.
    '''
    if report.witness is None:
        return None
    x, y, z = report.witness
    one = monoid.one
    if report.witness_side == "right":
        joint = monoid.right_lcm(x, y)
        return Multifraction((one, z, joint.lcm), monoid.presentation)
    joint = monoid.left_lcm(x, y)
    return Multifraction((one, one, z, joint.lcm), monoid.presentation)
