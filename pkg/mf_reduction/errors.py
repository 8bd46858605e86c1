# -*- coding: utf-8 -*-
# Exception hierarchy shared by every module. The CLI maps each family to one exit status.

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_UNDECIDED = 3
EXIT_ORE_FAILURE = 4
EXIT_CAP_EXCEEDED = 5


class MultifractionError(Exception):
    exit_status = 1


#~~~~~~~~~ invalid input ~~~~~~~~~

class PresentationError(MultifractionError):
    exit_status = EXIT_VALIDATION


class NonHomogeneousRelation(PresentationError):
    def __init__(self, relation, message=None):
        self.relation = relation
        super().__init__(message or "relation is not length-preserving: %s" % (relation,))


class EmptyAlphabet(PresentationError):
    pass


class DuplicateAtomName(PresentationError):
    pass


class UnknownAtom(PresentationError):
    pass


class PresentationSyntaxError(PresentationError):
    pass


class UnknownPreset(PresentationError):
    pass


class InvalidCap(PresentationError):
    pass


class LevelOutOfRange(PresentationError):
    pass


class BadDepth(PresentationError):
    pass


class NotArtinTits(PresentationError):
    pass


class SupportIllDefined(PresentationError):
    pass


class TrivialElement(PresentationError):
    pass


class NotADivisor(PresentationError):
    pass


#~~~~~~~~~ evidence against the gcd-monoid trust flags ~~~~~~~~~

class GcdMonoidEvidence(MultifractionError):
    exit_status = EXIT_VALIDATION


class NotGcdMonoid(GcdMonoidEvidence):
    pass


class AmbiguousQuotient(NotGcdMonoid):
    pass


class NotConditionalLcm(NotGcdMonoid):
    pass


#~~~~~~~~~ 3-Ore failure ~~~~~~~~~

class ThreeOreViolation(MultifractionError):
    exit_status = EXIT_ORE_FAILURE

    def __init__(self, witness, side="right", message=None):
        self.witness = tuple(witness) if witness is not None else None
        self.side = side
        if message is None:
            shown = " ".join(str(x) for x in self.witness) if self.witness else "?"
            message = "3-Ore condition fails on the %s side, witness: %s" % (side, shown)
        super().__init__(message)


#~~~~~~~~~ caps ~~~~~~~~~

class CapExceeded(MultifractionError):
    exit_status = EXIT_CAP_EXCEEDED


class ClassSizeExceeded(CapExceeded):
    pass


class BasicClosureDiverges(CapExceeded):
    pass


class LcmSearchExhausted(CapExceeded):
    pass


class NodeCapExceeded(CapExceeded):
    pass


class SubsetBlowup(CapExceeded):
    pass


#~~~~~~~~~ internal guards ~~~~~~~~~

class IrreducibilityAssertionFailed(MultifractionError):
    pass


class InconsistentTrace(MultifractionError):
    pass


class StepVerificationFailed(MultifractionError):
    pass
