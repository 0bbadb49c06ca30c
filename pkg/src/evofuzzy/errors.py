"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input failed a shape or finiteness check."""


class ConfigurationError(ValueError):
    """A configuration value is outside its allowed range."""


class NumericalBreakdownError(ArithmeticError):
    """A recursion produced a non-positive quantity that must stay positive."""


class DegenerateRegressorError(NumericalBreakdownError):
    """Regressor norm is too small to normalize an update."""


class DegenerateRangeError(ValueError):
    """Cannot normalize a series whose min equals its max."""


class InsufficientDataError(ValueError):
    """Not enough samples for the requested operation."""


class MetricUndefinedError(ValueError):
    """Metric cannot be computed for the given values (e.g. MAPE with a zero actual)."""


class OracleInapplicableError(ValueError):
    """Oracle preconditions do not hold (e.g. rank-deficient regressors)."""


class CSVParseError(ValueError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
