"""Exception hierarchy. Every error carries a stable machine-readable code."""


class HypolyError(Exception):
    code = "ERROR"
    # exit status used by the command line frontend
    exit_status = 3


class ParseError(HypolyError):
    code = "PARSE_ERROR"
    exit_status = 2


class TooLarge(HypolyError):
    code = "TOO_LARGE"
    exit_status = 2


class NonGenericWeights(HypolyError):
    code = "NON_GENERIC"
    exit_status = 2


class SetNotShort(HypolyError):
    code = "SET_NOT_SHORT"


class DegreeMismatch(HypolyError):
    code = "DEGREE_MISMATCH"


class BadShape(HypolyError):
    code = "BAD_SHAPE"


class RecursionShape(HypolyError):
    code = "RECURSION_SHAPE"


class NonIntegerPairing(HypolyError):
    code = "NON_INTEGER_PAIRING"


class MorseInconsistency(HypolyError):
    code = "MORSE_INCONSISTENCY"


class UnsupportedGenus(HypolyError):
    code = "UNSUPPORTED_GENUS"


class InvariantViolation(HypolyError):
    code = "INVARIANT_VIOLATION"


class NotAdjacent(HypolyError):
    code = "NOT_ADJACENT"


class SameChamber(HypolyError):
    code = "SAME_CHAMBER"


class ZeroQ(HypolyError):
    code = "ZERO_Q"


class NotClosed(HypolyError):
    code = "NOT_CLOSED"


class UnstablePoint(HypolyError):
    code = "UNSTABLE_POINT"


class MomentViolation(HypolyError):
    code = "MOMENT_VIOLATION"


class MalformedResidue(HypolyError):
    code = "MALFORMED_RESIDUE"
