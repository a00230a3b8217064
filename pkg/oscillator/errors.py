"""
Exception hierarchy shared by every qcinfo module
"""


class QCInfoError(Exception):
    """Base class for all qcinfo errors"""


class InputError(QCInfoError, ValueError):
    """Invalid argument supplied by the caller"""


class DomainError(InputError):
    """Quantity is mathematically undefined at the requested point"""


class ConfigurationError(QCInfoError, ValueError):
    """Run or solver configuration violates an accuracy or validity guard"""


class NumericalError(QCInfoError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance"""

    def __init__(self, message: str, achieved: float = float('nan')):
        super().__init__(message)
        self.achieved = achieved


class OutputError(QCInfoError, OSError):
    """A result file could not be written"""
