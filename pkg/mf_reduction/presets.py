# -*- coding: utf-8 -*-
import logging
import string
from itertools import combinations
from pathlib import Path

from mf_reduction.errors import PresentationSyntaxError, UnknownPreset
from mf_reduction.presentation import (DEFAULT_CLASS_CAP, Presentation, parse_presentation,
                                       validate_presentation)

logger = logging.getLogger(__name__)

# named presets resolved before the parametrised families below
ALIASES = {
    "affine-A2": "artin:ab=3,bc=3,ca=3",
    "raag-abc": "raag:ab,bc",
}

PRESET_FAMILIES = ["free", "braid", "raag", "artin", "dihedral"]


def atom_names(n):
    if n <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:n])
    return ["s%d" % (i + 1) for i in range(n)]


def alternating(s, t, m):
    return [s if k % 2 == 0 else t for k in range(m)]


def artin_tits(names, exponents):
    '''
        Artin-Tits presentation: one relation sts... = tst... (m letters each side) per pair with finite m.
        pairs missing from exponents, or mapped to None, carry no relation.
    '''
    relations = []
    for (s, t), m in sorted(exponents.items()):
        if m is None:
            continue
        if m < 2 or s == t:
            raise PresentationSyntaxError("invalid Artin-Tits exponent m(%s,%s) = %s" % (s, t, m))
        relations.append((alternating(s, t, m), alternating(t, s, m)))
    return Presentation.from_names(list(names), relations)


def free(n):
    return artin_tits(atom_names(n), {})


def braid(strands):
    names = atom_names(max(strands - 1, 0))
    exponents = {}
    for i, j in combinations(range(len(names)), 2):
        exponents[(names[i], names[j])] = 3 if j == i + 1 else 2
    return artin_tits(names, exponents)


def raag(edges, names=None):
    ''' right-angled Artin presentation: the listed pairs commute, all others are free '''
    edges = list(edges)
    if names is None:
        names = sorted({name for edge in edges for name in edge})
    return artin_tits(names, {edge: 2 for edge in edges})


def dihedral(m):
    return artin_tits(["a", "b"], {("a", "b"): m})


def is_artin_tits(presentation):
    ''' every relation reads sts... = tst... with both sides of the same length, at most one per pair '''
    pairs = set()
    for relation in presentation.relations:
        if len(relation.lhs) < 2:
            return False
        s, t = relation.lhs[0], relation.lhs[1]
        m = len(relation.lhs)
        if s == t or relation.lhs != tuple(alternating(s, t, m)) or relation.rhs != tuple(alternating(t, s, m)):
            return False
        if frozenset((s, t)) in pairs:
            return False
        pairs.add(frozenset((s, t)))
    return True


def _parse_pair(token):
    if "-" in token:
        pair = tuple(part.strip() for part in token.split("-"))
    else:
        pair = tuple(token.strip())
    if len(pair) != 2 or not all(pair):
        raise PresentationSyntaxError("cannot read the atom pair %r" % token)
    return pair


def _parse_int(value, what):
    try:
        return int(value)
    except ValueError:
        raise PresentationSyntaxError("%s must be an integer, got %r" % (what, value))


def preset(name):
    name = ALIASES.get(name, name)
    family, _, argument = name.partition(":")
    if family not in PRESET_FAMILIES or not argument:
        raise UnknownPreset("unknown presentation preset %r" % name)

    if family == "free":
        return free(_parse_int(argument, "rank"))
    if family == "braid":
        return braid(_parse_int(argument, "strand count"))
    if family == "dihedral":
        return dihedral(_parse_int(argument, "exponent"))
    if family == "raag":
        return raag([_parse_pair(token) for token in argument.split(",") if token.strip()])

    # artin:ab=3,bc=4,... (pairs not listed have no relation)
    exponents = {}
    for token in argument.split(","):
        if not token.strip():
            continue
        pair_text, _, value = token.partition("=")
        m = None if value.strip() in ("inf", "oo") else _parse_int(value, "exponent")
        exponents[_parse_pair(pair_text)] = m
    names = sorted({atom for pair in exponents for atom in pair})
    return artin_tits(names, exponents)


def is_preset(source):
    source = ALIASES.get(source, source)
    return source.partition(":")[0] in PRESET_FAMILIES and ":" in source


def load_presentation(source, class_cap=DEFAULT_CLASS_CAP):
    ''' a preset name or the path of a presentation text file '''
    if is_preset(source):
        raw = preset(source)
    else:
        path = Path(source)
        if not path.is_file():
            raise UnknownPreset("%r is neither a preset nor a presentation file" % source)
        raw = parse_presentation(path.read_text(encoding="utf-8"))
    logger.debug("loaded %s: %d atoms, %d relations", source, len(raw.atoms), len(raw.relations))
    return validate_presentation(raw, class_cap=class_cap)
