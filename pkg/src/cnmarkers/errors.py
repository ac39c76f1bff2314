"""Exception hierarchy.

Every error carries the process exit code of its category so the CLI can
map failures uniformly: 2 for configuration/input problems, 3 for runtime
failures inside estimators or simulators.
"""


class CnmError(Exception):
    """Base class for all package errors."""

    exit_code = 3


# input / configuration problems (exit code 2)

class ParseError(CnmError):
    """Malformed text input (CSV row, config line, events line)."""

    exit_code = 2


class FormatError(CnmError):
    """Structurally valid input with inconsistent content (e.g. non-uniform timestamps)."""

    exit_code = 2


class DataError(CnmError):
    """Values that violate data invariants (NaN/inf cells, malformed events)."""

    exit_code = 2


class ConfigError(CnmError):
    """Invalid or unknown configuration."""

    exit_code = 2


class BoundsError(CnmError):
    """Window or index out of range."""

    exit_code = 2


class EmptyInput(CnmError):
    """An operation received no data."""

    exit_code = 2


class InsufficientData(CnmError):
    """Too few samples for the requested statistic."""

    exit_code = 2


# runtime failures (exit code 3)

class DegenerateInput(CnmError):
    """Numerically degenerate input (constant sequences, identical variances)."""


class DivergenceError(CnmError):
    """A trajectory left the finite domain."""


class SingularityError(CnmError):
    """A trajectory hit a singularity guard of its model."""


class ProjectionError(CnmError):
    """Bipartite projection impossible (all-zero row or column)."""


class DegenerateNetwork(CnmError):
    """Network reduction undefined (zero interaction mass)."""


class NoFoldError(CnmError):
    """The resilience curve has no fold on the searched branch."""
