"""Exception types.

Every validation failure carries a ``witness`` tuple of element ids (or
other small values) pinpointing the first violation found.
"""

from __future__ import annotations


class SupertropicalError(ValueError):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness


# monoid axioms
class NonAssociative(SupertropicalError):
    pass


class NonCommutative(SupertropicalError):
    pass


class BadUnit(SupertropicalError):
    pass


class BadZero(SupertropicalError):
    pass


class ENotIdempotent(SupertropicalError):
    pass


class GhostKillsTangible(SupertropicalError):
    pass


class OrderIncompatible(SupertropicalError):
    pass


class GhostNotClosed(SupertropicalError):
    pass


class TooLarge(SupertropicalError):
    pass


class NotGhost(SupertropicalError):
    pass


class NotTangible(SupertropicalError):
    pass


class NotAnIdeal(SupertropicalError):
    pass


# STR construction
class RhoNotMultiplicative(SupertropicalError):
    pass


class RhoUnitMismatch(SupertropicalError):
    pass


class RhoKernelTooBig(SupertropicalError):
    pass


# relations
class NotTE(SupertropicalError):
    pass


class NotMFCE(SupertropicalError):
    pass


class NotMixing(SupertropicalError):
    pass


class FiberIncompatibleSeed(SupertropicalError):
    pass


# transmissions
class NotMultiplicative(SupertropicalError):
    pass


class UnitMismatch(SupertropicalError):
    pass


class GhostPartNotMonotone(SupertropicalError):
    pass


class NotSurjective(SupertropicalError):
    pass


class NonTrivialZeroKernel(SupertropicalError):
    pass


class NotASubmonoid(SupertropicalError):
    pass


class MissingTangibles(SupertropicalError):
    pass


class ImageEscapesN(SupertropicalError):
    pass


class NotUnfolded(SupertropicalError):
    pass


class NotTangiblySurjective(SupertropicalError):
    pass


class NotFiberContraction(SupertropicalError):
    pass


# valuations
class NotSemiring(SupertropicalError):
    pass


class NotSubadditive(SupertropicalError):
    pass


class NotContainedInG(SupertropicalError):
    pass


class TargetNotSemiring(SupertropicalError):
    pass


class TargetsTooLarge(SupertropicalError):
    pass


# sections
class SC1Violated(SupertropicalError):
    pass


class SC2Violated(SupertropicalError):
    pass


class ClassWithTwoTangibles(SupertropicalError):
    pass


class NoUpperBound(SupertropicalError):
    pass


class NotATyrant(SupertropicalError):
    pass


# equalizers
class NotSingleFiber(SupertropicalError):
    pass


class NodeMismatch(SupertropicalError):
    pass


class LabelNotInS(SupertropicalError):
    pass


# cli / fixture format
class ParseError(SupertropicalError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}", (line, column))
        self.line = line
        self.column = column


class UnknownName(SupertropicalError):
    pass
