"""Exception hierarchy.

Every failure raised by the pipeline derives from :class:`MinterpError` and
carries an optional ``stage`` tag so the CLI can report where it happened.
"""


class MinterpError(Exception):
    stage = None

    def with_stage(self, stage):
        self.stage = stage
        return self


# analytic core
class NonResolvable(MinterpError):
    """Chebyshev coefficients did not decay before the degree cap."""


class OutOfDomain(MinterpError):
    pass


class DomainMismatch(MinterpError):
    pass


class ZeroOnDomain(MinterpError):
    pass


class NoBranchGap(MinterpError):
    pass


class UnitDiskViolation(MinterpError):
    pass


# normal field / Bjorling
class NoAdmissiblePermutation(MinterpError):
    pass


class NotUnitNormal(MinterpError):
    pass


class NotOrthogonal(MinterpError):
    pass


class DenominatorVanishes(MinterpError):
    pass


# solver
class B0Vanishes(MinterpError):
    pass


class ConvergenceError(MinterpError):
    """Base for failures of the chord iteration."""


class NonConvergence(ConvergenceError):
    pass


class RangeEscape(ConvergenceError):
    """An inner map sends part of the closed domain outside it."""


class ImaginaryDerivativeResidual(MinterpError):
    pass


# bounds / verification / io
class DegenerateConstants(MinterpError):
    pass


class UnknownReference(MinterpError):
    pass


class ParseError(MinterpError):
    pass


class SchemaError(ParseError):
    pass


class IoError(MinterpError):
    pass
