"""Exception hierarchy.

Every error carries a short machine-parsable ``tag`` so the CLI can emit
single-line diagnostics and map failures to exit codes.
"""

from __future__ import annotations


class ChoreFairError(ValueError):
    """Base class for all library errors."""

    tag = "error"

    def __str__(self) -> str:  # "<tag>: <message>"
        return f"{self.tag}: {super().__str__()}"


class BoundsError(ChoreFairError):
    tag = "bounds-error"


class SizeGuardError(ChoreFairError):
    tag = "size-guard-exceeded"


class ArgumentError(ChoreFairError):
    tag = "argument-error"


class ValidationError(ChoreFairError):
    tag = "validation-error"


class NormalizationError(ChoreFairError):
    tag = "normalization-error"


class UnsupportedVariantError(ChoreFairError):
    tag = "unsupported-variant"


class PreconditionError(ChoreFairError):
    tag = "precondition-failed"


class NotInTableError(ChoreFairError):
    tag = "not-in-table"


class NoFairAllocationError(ChoreFairError):
    tag = "no-fair-allocation"


class InternalError(ChoreFairError):
    tag = "internal-invariant"


class ParseError(ChoreFairError):
    tag = "parse-error"
