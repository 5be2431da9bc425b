"""Exception types shared across the package."""


class InvariantViolation(ValueError):
    """A structural invariant (normalization, hermiticity, tag contract) does not hold."""


class NumericalFailure(ArithmeticError):
    """A numerical result left its guaranteed range by more than rounding allows."""


class ConfigError(ValueError):
    """A scenario configuration file or field is invalid."""
