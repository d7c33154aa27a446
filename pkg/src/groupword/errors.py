"""Shared error types.

The CLI maps these onto exit codes: usage problems exit 1, budget or
unsupported-configuration problems exit 2.  A negative verdict (e.g. "no
coset identity found") is data, not an error.
"""


class BudgetExceeded(RuntimeError):
    """A configured enumeration / tuple / size budget would be exceeded."""


class Unsupported(RuntimeError):
    """The requested computation is deliberately outside this tool's scope."""
