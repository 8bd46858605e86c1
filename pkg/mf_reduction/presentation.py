# -*- coding: utf-8 -*-
import logging
import re
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from mf_reduction.errors import (ClassSizeExceeded, DuplicateAtomName, EmptyAlphabet, NonHomogeneousRelation,
                                 PresentationSyntaxError, UnknownAtom)

logger = logging.getLogger(__name__)

DEFAULT_CLASS_CAP = 100000
IDENTITY_TOKEN = "1"
INVERSE_SUFFIX = "^-1"

# A word is a tuple of atom ids; the empty tuple is the identity.
Word = Tuple[int, ...]


@dataclass(frozen=True)
class Atom:
    id: int
    name: str

    def __str__(self):
        return self.name


class Sign(Enum):
    POSITIVE = 1
    NEGATIVE = -1


@dataclass(frozen=True)
class SignedLetter:
    atom: int
    sign: Sign = Sign.POSITIVE

    @property
    def positive(self):
        return self.sign is Sign.POSITIVE

    def inverse(self):
        return SignedLetter(self.atom, Sign.NEGATIVE if self.positive else Sign.POSITIVE)


SignedWord = Tuple[SignedLetter, ...]


def inverse_signed(w) -> SignedWord:
    ''' the involution exchanging s and s-bar, read backwards '''
    return tuple(letter.inverse() for letter in reversed(w))


def positive_signed(word) -> SignedWord:
    return tuple(SignedLetter(atom) for atom in word)


def negative_signed(word) -> SignedWord:
    return tuple(SignedLetter(atom, Sign.NEGATIVE) for atom in reversed(word))


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def key(self):
        return tuple(sorted((self.lhs, self.rhs)))

    def reversed(self):
        return Relation(tuple(reversed(self.lhs)), tuple(reversed(self.rhs)))

    def same_atoms(self):
        return set(self.lhs) == set(self.rhs)


@dataclass
class Presentation:
    ''' raw, unvalidated monoid presentation <atoms | relations>+ '''
    atoms: List[Atom]
    relations: List[Relation] = field(default_factory=list)
    asserted_gcd_monoid: bool = True
    asserted_cancellative: bool = True

    @classmethod
    def from_names(cls, names, relations=(),
                   asserted_gcd_monoid=True, asserted_cancellative=True):
        atoms = [Atom(i, name) for i, name in enumerate(names)]
        index = {}
        for atom in atoms:
            index.setdefault(atom.name, atom.id)
        single_letter = all(len(name) == 1 for name in names)
        rels = [Relation(_names_to_word(lhs, index, single_letter), _names_to_word(rhs, index, single_letter))
                for lhs, rhs in relations]
        return cls(atoms, rels, asserted_gcd_monoid, asserted_cancellative)


def _names_to_word(names, index, single_letter) -> Word:
    if isinstance(names, str):
        tokens = names.split()
    else:
        tokens = list(names)
    letters = []
    for token in tokens:
        if token == IDENTITY_TOKEN and token not in index:
            continue
        if token in index:
            letters.append(index[token])
        elif single_letter and all(ch in index for ch in token):
            letters.extend(index[ch] for ch in token)
        else:
            raise UnknownAtom("unknown atom %r" % token)
    return tuple(letters)


@dataclass(frozen=True, order=True)
class Element:
    ''' monoid element, stored as the lexicographically minimal word of its class '''
    word: Word
    presentation: "ValidatedPresentation" = field(compare=False, repr=False, default=None)

    @property
    def length(self):
        return len(self.word)

    @property
    def is_identity(self):
        return not self.word

    def sort_key(self):
        return (len(self.word), self.word)

    def __mul__(self, other):
        return self.presentation.canonical(self.word + other.word)

    def __str__(self):
        return self.presentation.format_word(self.word)


def validate_presentation(raw, class_cap=DEFAULT_CLASS_CAP) -> "ValidatedPresentation":
    if not raw.atoms:
        raise EmptyAlphabet("the alphabet is empty")
    names = set()
    for position, atom in enumerate(raw.atoms):
        if not atom.name:
            raise PresentationSyntaxError("atom %d has an empty name" % position)
        if atom.id != position:
            raise PresentationSyntaxError("atom %s has id %d at position %d" % (atom.name, atom.id, position))
        if atom.name in names:
            raise DuplicateAtomName("atom name %r is declared twice" % atom.name)
        names.add(atom.name)

    kept, keys = [], set()
    for relation in raw.relations:
        for letter in relation.lhs + relation.rhs:
            if not 0 <= letter < len(raw.atoms):
                raise UnknownAtom("relation %s uses undeclared atom id %d" % (relation, letter))
        if len(relation.lhs) != len(relation.rhs) or not relation.lhs:
            raise NonHomogeneousRelation(relation)
        if relation.lhs == relation.rhs:
            logger.debug("dropping trivial relation %s", relation)
            continue
        if relation.key() in keys:
            continue
        keys.add(relation.key())
        kept.append(relation)
    return ValidatedPresentation(raw.atoms, kept, raw.asserted_gcd_monoid, raw.asserted_cancellative, class_cap)


class ValidatedPresentation:
    '''
        homogeneous presentation with its equivalence-class cache.
        the class cache is shared between threads; insertions hold the lock.
    '''

    def __init__(self, atoms, relations, asserted_gcd_monoid=True, asserted_cancellative=True, class_cap=DEFAULT_CLASS_CAP):
        self.atoms = tuple(atoms)
        self.relations = tuple(relations)
        self.asserted_gcd_monoid = asserted_gcd_monoid
        self.asserted_cancellative = asserted_cancellative
        self.class_cap = class_cap
        self.index = {atom.name: atom.id for atom in self.atoms}
        self.single_letter = all(len(atom.name) == 1 for atom in self.atoms)

        # rewriting rules indexed by first letter, both directions of every relation.
        self._rules = {}
        for relation in self.relations:
            for lhs, rhs in ((relation.lhs, relation.rhs), (relation.rhs, relation.lhs)):
                self._rules.setdefault(lhs[0], []).append((lhs, rhs))

        self._classes = {}
        self._lock = threading.Lock()
        self._opposite = None

    @property
    def size(self):
        return len(self.atoms)

    @property
    def identity(self):
        return Element((), self)

    def atom(self, name):
        return self.canonical((self.index[name],))

    def opposite(self) -> "ValidatedPresentation":
        ''' the presentation of the opposite monoid: every relation read backwards '''
        if self._opposite is None:
            mirror = ValidatedPresentation(self.atoms, [r.reversed() for r in self.relations],
                                           self.asserted_gcd_monoid, self.asserted_cancellative, self.class_cap)
            mirror._opposite = self
            self._opposite = mirror
        return self._opposite

    def is_artin_tits_style(self):
        return all(relation.same_atoms() for relation in self.relations)

    #~~~~~~~~~ classes and canonical forms ~~~~~~~~~

    def _check_letters(self, word):
        for letter in word:
            if not 0 <= letter < len(self.atoms):
                raise UnknownAtom("undeclared atom id %d" % letter)

    def equivalence_class(self, word) -> FrozenSet[Word]:
        word = tuple(word)
        cached = self._classes.get(word)
        if cached is not None:
            return cached
        self._check_letters(word)

        seen = {word}
        todo = [word]
        while todo:
            current = todo.pop()
            for pos, letter in enumerate(current):
                for lhs, rhs in self._rules.get(letter, ()):
                    end = pos + len(lhs)
                    if current[pos:end] != lhs:
                        continue
                    image = current[:pos] + rhs + current[end:]
                    if image not in seen:
                        seen.add(image)
                        todo.append(image)
                        if len(seen) > self.class_cap:
                            raise ClassSizeExceeded("class of %s exceeds %d words" % (self.format_word(word), self.class_cap))

        result = frozenset(seen)
        with self._lock:
            for member in result:
                self._classes[member] = result
        return result

    def words_equal(self, u, v) -> bool:
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            return False
        if u == v:
            return True
        return v in self.equivalence_class(u)

    def canonical_word(self, word) -> Word:
        return min(self.equivalence_class(word))

    def canonical(self, word) -> Element:
        return Element(self.canonical_word(word), self)

    def parse_signed(self, w):
        ''' splits w = w1 w2-bar w3 w4-bar ... into positive blocks, w1 possibly empty '''
        from mf_reduction.multifraction import Multifraction

        if not w:
            return Multifraction((), self)
        blocks = [[]]
        for letter in w:
            expects_positive = len(blocks) % 2 == 1
            if letter.positive != expects_positive:
                blocks.append([])
            blocks[-1].append(letter.atom)
        entries = []
        for position, block in enumerate(blocks, start=1):
            word = tuple(block) if position % 2 == 1 else tuple(reversed(block))
            entries.append(self.canonical(word))
        return Multifraction(tuple(entries), self)

    #~~~~~~~~~ text syntax ~~~~~~~~~

    def format_word(self, word) -> str:
        word = tuple(word)
        if not word:
            return IDENTITY_TOKEN
        joiner = "" if self.single_letter else "."
        return joiner.join(self.atoms[letter].name for letter in word)

    def parse_word(self, text) -> Word:
        letters = []
        for token in re.split(r"[\s.]+", text.strip()):
            if not token or (token == IDENTITY_TOKEN and token not in self.index):
                continue
            if token in self.index:
                letters.append(self.index[token])
            elif self.single_letter and all(ch in self.index for ch in token):
                letters.extend(self.index[ch] for ch in token)
            else:
                raise UnknownAtom("unknown atom in %r" % token)
        return tuple(letters)

    def element(self, text) -> Element:
        return self.canonical(self.parse_word(text))

    def _uppercase_inverses(self):
        return self.single_letter and all(name.isalpha() and name.islower() for name in self.index)

    def parse_signed_text(self, text) -> SignedWord:
        ''' uppercase letters (single-letter alphabets) or name^-1 tokens are inverses '''
        letters = []
        for token in text.split():
            if token == IDENTITY_TOKEN and token not in self.index:
                continue
            if token.endswith(INVERSE_SUFFIX) and token[:-len(INVERSE_SUFFIX)] in self.index:
                letters.append(SignedLetter(self.index[token[:-len(INVERSE_SUFFIX)]], Sign.NEGATIVE))
            elif token in self.index:
                letters.append(SignedLetter(self.index[token]))
            elif self.single_letter:
                for ch in token:
                    if ch in self.index:
                        letters.append(SignedLetter(self.index[ch]))
                    elif ch.isupper() and ch.lower() in self.index:
                        letters.append(SignedLetter(self.index[ch.lower()], Sign.NEGATIVE))
                    else:
                        raise UnknownAtom("unknown letter %r in %r" % (ch, text))
            else:
                raise UnknownAtom("unknown token %r" % token)
        return tuple(letters)

    def format_signed(self, w) -> str:
        if not w:
            return IDENTITY_TOKEN
        if self._uppercase_inverses():
            return "".join(self.atoms[l.atom].name if l.positive else self.atoms[l.atom].name.upper() for l in w)
        return " ".join(self.atoms[l.atom].name if l.positive else self.atoms[l.atom].name + INVERSE_SUFFIX for l in w)


def canonical(p, w) -> Element:
    return p.canonical(w)


def equivalence_class(p, w) -> FrozenSet[Word]:
    return p.equivalence_class(w)


def words_equal(p, u, v) -> bool:
    return p.words_equal(u, v)


def parse_signed(p, w):
    return p.parse_signed(w)


#~~~~~~~~~ line-oriented presentation files ~~~~~~~~~

TRUE_WORDS = ("yes", "true", "1")
FALSE_WORDS = ("no", "false", "0")


def _flag(value, line_number):
    value = value.strip().lower()
    if value in TRUE_WORDS:
        return True
    if value in FALSE_WORDS:
        return False
    raise PresentationSyntaxError("line %d: expected yes or no, got %r" % (line_number, value))


def parse_presentation(text) -> Presentation:
    '''
        atoms: a b c
        rel: a b a = b a b
        gcd-monoid: yes
        cancellative: yes
    '''
    names: Optional[List[str]] = None
    relations = []
    flags = {"gcd-monoid": True, "cancellative": True}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationSyntaxError("line %d: expected 'key: value'" % line_number)
        key, value = (part.strip() for part in line.split(":", 1))
        key = key.lower()
        if key == "atoms":
            if names is not None:
                raise PresentationSyntaxError("line %d: atoms declared twice" % line_number)
            names = value.split()
        elif key == "rel":
            if names is None:
                raise PresentationSyntaxError("line %d: relation before the atoms line" % line_number)
            if value.count("=") != 1:
                raise PresentationSyntaxError("line %d: a relation needs exactly one '='" % line_number)
            lhs, rhs = (side.strip() for side in value.split("="))
            relations.append((lhs, rhs))
        elif key in flags:
            flags[key] = _flag(value, line_number)
        else:
            raise PresentationSyntaxError("line %d: unknown key %r" % (line_number, key))
    if names is None:
        raise PresentationSyntaxError("missing 'atoms:' line")
    return Presentation.from_names(names, relations, flags["gcd-monoid"], flags["cancellative"])
