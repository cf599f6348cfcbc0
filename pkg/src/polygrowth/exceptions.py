"""Exception hierarchy shared by the symbolic and numeric layers."""


class PolyGrowthError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PolyGrowthError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        super().__init__(where + message)


class ArityError(PolyGrowthError, ValueError):
    pass


class ConstantComponentError(PolyGrowthError, ValueError):
    pass


class NotHomogeneousError(PolyGrowthError, ValueError):
    pass


class MatrixSizeError(PolyGrowthError):
    pass


class NodeExhaustionError(PolyGrowthError):
    """The perturbation fallback ran out of usable interpolation nodes."""


class CertificationError(PolyGrowthError):
    """No certificate for the condition at infinity could be produced."""


class GridCapError(PolyGrowthError):
    pass


class InconsistencyError(PolyGrowthError):
    """An internal invariant failed (for example a negative defect)."""


class RootFindingError(PolyGrowthError):
    pass


class PreconditionError(PolyGrowthError, ValueError):
    pass
