"""Exception taxonomy shared by all phaselab modules.

The CLI maps these onto exit codes: input and validation problems
(:class:`PotentialError`, :class:`DomainError`, :class:`ConfigError`,
:class:`InputError`) exit with status 2, numerical failures
(:class:`NumericError`) with status 3, and I/O problems with status 4.
"""


class PhaselabError(Exception):
    """Base class for all errors raised by this package."""


class PotentialError(PhaselabError, ValueError):
    """A potential descriptor violates the admission rules."""


class DomainError(PhaselabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(PhaselabError, ValueError):
    """A tolerance or solver setting is outside its allowed range."""


class InputError(PhaselabError, ValueError):
    """Structurally invalid input data (orderings, lengths, descriptors)."""


class NumericError(PhaselabError, RuntimeError):
    """An iteration or quadrature failed to converge; carries diagnostics."""
