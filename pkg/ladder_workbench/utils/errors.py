"""
Exception hierarchy for the workbench.

Each class carries the process exit status the CLI reports for it.
"""


class WorkbenchError(Exception):
    """Base class for all workbench failures."""

    exit_code = 1


class ParameterError(WorkbenchError, ValueError):
    """A parameter lies outside the gate of the requested operation."""

    exit_code = 2


class SizeError(WorkbenchError):
    """A dimension cap would be exceeded."""

    exit_code = 2


class ContractViolation(WorkbenchError):
    """An operand breaks a precondition (Hermitian, PSD, unitary, ...)."""

    exit_code = 1


class SingularityError(ContractViolation):
    """Inverse square root requested for a (numerically) singular matrix."""
