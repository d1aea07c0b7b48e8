"""Exception hierarchy."""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class ExpressionSyntaxError(GeometryError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class CoordinateIndexError(ExpressionSyntaxError):
    pass


class ExponentBoundError(ExpressionSyntaxError):
    pass


class EvaluationError(GeometryError):
    pass


class SingularEvaluationError(EvaluationError):
    def __init__(self, message, point=None):
        super().__init__(message if point is None else f"{message} at z={list(point)}")
        self.point = point


class NonFiniteError(EvaluationError):
    def __init__(self, message, point=None):
        super().__init__(message if point is None else f"{message} at z={list(point)}")
        self.point = point


class InadmissiblePointError(GeometryError):
    pass


class MetricError(GeometryError):
    """Metric data that is not Hermitian positive definite."""


class IllConditionedError(MetricError):
    pass


class DimensionMismatchError(GeometryError):
    pass


class SamplerExhaustedError(GeometryError):
    pass


class ConfigError(GeometryError):
    """Bad input files, catalog names or option combinations."""
