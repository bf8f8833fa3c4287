"""Exceptions raised by cesarolab."""


class CesaroLabError(Exception):
    """Base class of everything the lab raises on purpose."""


class ParameterError(CesaroLabError, ValueError):
    """A parameter lies outside the admissible domain."""


class RadiusError(ParameterError):
    """Evaluation requested beyond the admissible radius of a truncated series."""
    def __init__(self, radius, admissible):
        self.radius = float(radius)
        self.admissible = float(admissible)
        super().__init__(f"|z| = {self.radius:.15g} exceeds the admissible radius {self.admissible:.15g}.")


class DomainError(ParameterError):
    """Input outside the domain of a statistic or estimate."""


class UnsupportedRegimeError(ParameterError):
    """Integral parameters outside every implemented case."""


class ConfigError(ParameterError):
    """Malformed configuration document."""


class QuadratureError(CesaroLabError, RuntimeError):
    """The panel budget ran out before the contributions started to decay."""
    def __init__(self, message, partial=None, panels=0):
        self.partial = partial
        self.panels = panels
        super().__init__(f"{message} (panels used: {panels}, partial value: {partial})")


class DegenerateFitError(CesaroLabError, ArithmeticError):
    """A regression window holds values a log-log fit cannot use."""


class UnreliableTailError(CesaroLabError, ArithmeticError):
    """The moment tail cannot be extrapolated with the fitted power law."""
    def __init__(self, residual, limit):
        self.residual = residual
        self.limit = limit
        super().__init__(f"Power-law fit residual {residual:.3g} exceeds {limit:.3g}: tail extrapolation refused.")
