"""Exception types raised across the package."""


class WindfitError(Exception):
    """Base class for all package-specific errors."""


class InvalidParamsError(WindfitError, ValueError):
    """Distribution parameters violate the family's constraints."""


class DegenerateSampleError(WindfitError, ValueError):
    """Sample has too little variation to seed a fit."""


class InfeasibleStartError(WindfitError, ValueError):
    """Optimizer start point has infinite objective value."""


class AllStartsInfeasibleError(WindfitError, RuntimeError):
    """Every multi-start candidate was infeasible."""


class DivergentMomentError(WindfitError, ArithmeticError):
    """Requested moment does not exist for the given parameters."""


class TransformerSaturatedError(WindfitError, ArithmeticError):
    """Transformer cdf evaluated to exactly 1, so H/(1-H) is undefined."""


class InsufficientDataError(WindfitError, ValueError):
    """Too few observations for the requested statistic."""


class CsvParseError(WindfitError, ValueError):
    """Malformed input row; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NegativeSpeedError(CsvParseError):
    """Wind speed below zero in the input file."""


class MissingTimestampError(WindfitError, ValueError):
    """Season splitting requires a timestamp on every record."""
