"""Exception hierarchy shared by the whole package.

Every error raised on a user-facing path derives from BurnsideError so the
CLI can map failures onto its exit-code contract (1 usage/validation,
2 cap exceeded, 3 internal invariant violation).
"""


class BurnsideError(Exception):
    """Base class for all package errors."""


class ParseError(BurnsideError):
    """A spec string or serialized payload failed to parse."""


class GroupValidationError(BurnsideError):
    """A Cayley table or derived structure violates the group axioms."""


class NotAssociative(GroupValidationError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(f"multiplication not associative at triple {self.witness}")


class NoIdentity(GroupValidationError):
    def __init__(self):
        super().__init__("no two-sided identity element")


class NoInverse(GroupValidationError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no inverse")


class NotASubgroup(GroupValidationError):
    def __init__(self, reason: str):
        super().__init__(reason)


class CapExceeded(BurnsideError):
    def __init__(self, size: int, cap: int, what: str = "order"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} {size} exceeds cap {cap}")


class GroupMismatch(BurnsideError):
    """Two operands live over different groups."""


class TargetMismatch(BurnsideError):
    """Pullback legs do not share a target G-set."""


class NotNormal(BurnsideError):
    """Fix/quotient requested along a non-normal subgroup."""


class NotContained(BurnsideError):
    """Moebius interval endpoints are not nested."""


class EvenPrime(BurnsideError):
    """The exponent-p construction needs an odd prime."""


class LevelOrder(BurnsideError):
    """Tower transition requested upward instead of downward."""


class BadDivisorChain(BurnsideError):
    """Tower orders must form a divisibility chain."""


class SpecUnresolvable(BurnsideError):
    """A functorial subgroup spec does not resolve on the given tower."""


class IncoherentMarkers(BurnsideError):
    def __init__(self, level: int, detail: str):
        self.level = level
        super().__init__(f"marker chain incoherent at level {level}: {detail}")


class NonIntegerCoefficients(BurnsideError):
    """Operation requires integer coefficients."""


class NonFieldCoefficients(BurnsideError):
    """Module functor coefficients must live in a field."""


class CoefficientMismatch(BurnsideError):
    """Element coefficients cannot be mapped into the functor's field."""


class InternalCheckError(BurnsideError):
    """A dual-route self-check disagreed; indicates a bug, never user error."""
