"""Exception hierarchy shared by every module of the package."""


class QSLError(ValueError):
    """Base class for all errors raised by mixedqsl."""


class NotHermitian(QSLError):
    pass


class NotPSD(QSLError):
    pass


class NumericalFailure(QSLError):
    pass


class InvalidDimension(QSLError):
    pass


class DimensionMismatch(QSLError):
    pass


class NotAState(QSLError):
    pass


class NotIsoSpectral(QSLError):
    pass


class MaximallyMixed(QSLError):
    pass


class NotNormalized(QSLError):
    pass


class DomainError(QSLError):
    pass


class DegenerateData(QSLError):
    pass


class ParseError(QSLError):
    pass
