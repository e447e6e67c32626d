"""Exception types.  All derive from :class:`DRGError`."""


class DRGError(Exception):
    pass


class InvalidArray(DRGError, ValueError):
    """The numbers cannot be the intersection array of a distance-regular graph."""


class NonIntegral(InvalidArray):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MultiplicityNotIntegral(InvalidArray):
    def __init__(self, theta, value):
        super().__init__(f"multiplicity of eigenvalue {theta} is {value}, not an integer")
        self.theta = theta
        self.value = value


class InconsistentSpectrum(DRGError, ArithmeticError):
    """An identity that must hold for every array failed; indicates a bug."""


class PreconditionViolated(DRGError, ValueError):
    def __init__(self, message, which=None):
        super().__init__(message)
        self.which = which


class AuxBoundViolation(DRGError, ValueError):
    """The auxiliary parameter is outside the range forced by tightness."""


class DegenerateDenominator(DRGError, ZeroDivisionError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ZeroDenominator(DegenerateDenominator):
    pass


class A1Zero(PreconditionViolated):
    def __init__(self):
        super().__init__("a_1 = 0: no triangles, the bound on f is vacuous", "a1")


class NotTight(PreconditionViolated):
    def __init__(self, message="array is not tight"):
        super().__init__(message, "tight")


class ParamOutOfRange(DRGError, ValueError):
    pass


class TrivialEigenvalue(PreconditionViolated):
    def __init__(self):
        super().__init__("theta = k gives a degenerate Gram matrix", "theta")


class NotDistanceRegular(DRGError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAdjacent(DRGError, ValueError):
    pass


class NotStronglyRegular(DRGError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FormulaMismatch(DRGError):
    def __init__(self, formula, i, z, expected, actual):
        super().__init__(
            f"{formula}: i={i}, z={z}: expected {expected}, counted {actual}"
        )
        self.formula = formula
        self.i = i
        self.z = z
        self.expected = expected
        self.actual = actual


class GraphFormatError(DRGError, ValueError):
    pass


class ParseError(GraphFormatError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class LoopError(GraphFormatError):
    pass


class MultiEdgeError(GraphFormatError):
    pass


class Disconnected(GraphFormatError):
    pass


class GraphTooLarge(DRGError, ValueError):
    pass


class BudgetExceeded(DRGError, RuntimeError):
    def __init__(self, count, partial=()):
        super().__init__(f"candidate budget exhausted after {count} candidates")
        self.count = count
        self.partial = list(partial)
