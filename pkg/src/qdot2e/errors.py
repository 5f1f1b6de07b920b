"""Shared exception types."""


class DiagnosticError(RuntimeError):
    """A numerical diagnostic: non-convergence, ceiling hit, or an estimate
    outside its regime of validity.  Mapped to exit code 3 by the CLI."""
