"""Exception hierarchy and warning categories.

Every error raised by the library derives from StablenashError so callers
(and the CLI) can map failures to exit codes without matching on messages.
"""


class StablenashError(Exception):
    """Base class for all library errors."""


class ShapeError(StablenashError, ValueError):
    """Dimension mismatch between matrices, strategies, or profiles."""


class ValidationError(StablenashError, ValueError):
    """Malformed input data (non-finite entries, bad probability vectors, ...)."""


class DomainError(StablenashError, ValueError):
    """Operation applied outside its mathematical domain (e.g. empty set)."""


class ParameterError(StablenashError, ValueError):
    """Scalar parameter outside its admissible range."""


class PreconditionError(StablenashError, ValueError):
    """A checked precondition on the inputs does not hold."""


class CertificateError(StablenashError, ValueError):
    """A runtime certificate check failed; the input was not what it claimed."""


class DegenerateInputError(StablenashError, ValueError):
    """Randomized construction cannot succeed on this input (e.g. too few atoms)."""


class ResourceBudgetError(StablenashError, RuntimeError):
    """Enumeration or partition work would exceed the configured budget."""


class SolverError(StablenashError, RuntimeError):
    """Internal LP solver inconsistency; indicates a bug, not bad input."""


class PayoffRangeWarning(UserWarning):
    """Payoff entries lie outside the game's declared nominal range."""
