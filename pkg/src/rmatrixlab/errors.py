"""Exception taxonomy shared by all subsystems."""


class RMatrixLabError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(RMatrixLabError):
    pass


class NotExpandable(RMatrixLabError):
    pass


class BadLegSpec(RMatrixLabError):
    pass


class NotInvertible(RMatrixLabError):
    pass


class LedgerMismatch(RMatrixLabError):
    pass


class SolveFailure(RMatrixLabError):
    pass


class ShapeError(RMatrixLabError):
    pass


class SelfCheckFailed(RMatrixLabError):
    pass


class PoleError(RMatrixLabError):
    pass


class DegenerateSpectrum(RMatrixLabError):
    pass


class RelationCheckFailed(RMatrixLabError):
    pass


class ConditionFailed(RMatrixLabError):
    pass


class NotTriangular(RMatrixLabError):
    pass


class DiagonalNotInvertible(RMatrixLabError):
    pass


class UnknownCatalogId(RMatrixLabError):
    pass
