class PowerGameError(Exception):
    """Base class for errors raised by powerbalance."""


class SolverMismatchError(PowerGameError, ValueError):
    """A forced solver does not apply to the instance's adversary graph."""


class EnumerationCapError(PowerGameError):
    """Subset enumeration refused because a side is larger than the cap."""


class NumericalFailure(PowerGameError, RuntimeError):
    """A numerical routine stopped without a trustworthy answer."""


class InvalidConstructionError(PowerGameError, ValueError):
    """A construction step would not keep the equilibrium balanced."""
