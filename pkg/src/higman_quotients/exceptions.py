"""Error hierarchy shared by every subpackage.

Library code raises these; only the command line front end turns them into
exit codes.
"""

from typing import Any, Optional


class HigmanQuotientError(Exception):
    """Base class for all errors raised by higman_quotients."""


class ConfigError(HigmanQuotientError, ValueError):
    """Invalid run parameters (p not prime, p does not divide k - 1, ...)."""


class ModulusMismatch(HigmanQuotientError, ValueError):
    """Two residues (or polynomials) over different moduli were combined."""


class ContextMismatch(HigmanQuotientError, ValueError):
    """Operands belong to different rings or groups."""


class NotAUnit(HigmanQuotientError, ArithmeticError):
    """Inverse requested for a residue divisible by p."""


class NotInvertibleForm(HigmanQuotientError, ValueError):
    """Polynomial is not of the form 1 + p*q."""


class ShapeMismatch(HigmanQuotientError, AssertionError):
    """A relator or rule does not have the expected closed form.

    Signals a programming error, never bad user data.
    """


class SiteInvalid(HigmanQuotientError, ValueError):
    """A rewrite site does not point at a redex of the polynomial."""


class ParseError(HigmanQuotientError, ValueError):
    """Text could not be parsed in the polynomial or word grammar."""


class IterationCapExceeded(HigmanQuotientError, RuntimeError):
    """Reduction did not reach a terminal form within the step cap."""


class CapExceeded(HigmanQuotientError, RuntimeError):
    """An enumeration or exhaustive search grew beyond its size cap."""

    def __init__(self, message: str, size: Optional[int] = None):
        super().__init__(message)
        self.size = size


class BudgetExceeded(HigmanQuotientError, RuntimeError):
    """A search ran out of budget before producing a usable result."""

    def __init__(self, message: str, best: Any = None):
        super().__init__(message)
        self.best = best


class RegressionMismatch(HigmanQuotientError, AssertionError):
    """A recomputed constant differs from its pinned value."""
