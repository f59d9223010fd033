import numpy as np


class LociError(Exception):
    """Базовая ошибка библиотеки."""


class NonSymmetric(LociError, ValueError):
    pass


class NotPositiveDefinite(LociError, np.linalg.LinAlgError):
    pass


class Singular(LociError, np.linalg.LinAlgError):
    pass


class ConvergenceFailure(LociError, np.linalg.LinAlgError):
    pass


class ReassemblyFailure(LociError, np.linalg.LinAlgError):
    """Собранная из канонической формы матрица не совпала с исходной."""


class NotInImage(LociError, ValueError):
    pass


class NotSemisimple(LociError, ValueError):
    pass


class NonConstantModulus(LociError, ValueError):
    pass


class NotOrthogonal(LociError, ValueError):
    pass


class BasePointMismatch(LociError, ValueError):
    pass


class NotElliptic(LociError, ValueError):
    pass


class NotAFixedPoint(LociError, ValueError):
    pass


class BlockExtractionFailure(LociError, ValueError):
    pass


class ParseError(LociError, ValueError):
    pass


class DimensionMismatch(LociError, ValueError):
    pass
