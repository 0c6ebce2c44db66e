"""JSON response envelope of the CLI.

Success: {"ok": true, "result": ..., "witness": {...}}   (witness optional)
Failure: {"ok": false, "error": {"code": ..., "message": ..., "details": ...}}

The envelope carries no timestamps so identical queries produce identical
bytes.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from .models import CommandResult, WitnessPayload


class ErrorDetails(BaseModel):
    """Detailed error context."""

    field: str | None = Field(None, description="Argument or option at fault")
    provided: str | None = Field(None, description="Value that was provided")
    position: int | None = Field(
        None, description="Character offset of a parse error"
    )


class ErrorResponse(BaseModel):
    """Error information in response."""

    code: str = Field(..., description="Error code (e.g., PARSE_001, IO_001)")
    message: str = Field(..., description="Human-readable error message")
    details: ErrorDetails | None = Field(None, description="Additional error context")


class CommandResponse(BaseModel):
    """Envelope of one command run; either result or error is set."""

    ok: bool = Field(..., description="Whether the command computed an answer")
    result: Any = Field(None, description="Answer payload, absent on error")
    witness: WitnessPayload | None = Field(
        None, description="Membership certificate when requested"
    )
    error: ErrorResponse | None = Field(None, description="Error, absent on success")

    @classmethod
    def success(cls, outcome: CommandResult) -> CommandResponse:
        return cls(ok=True, result=outcome.result, witness=outcome.witness)

    @classmethod
    def failure(
        cls,
        code: str,
        message: str,
        *,
        field: str | None = None,
        provided: str | None = None,
        position: int | None = None,
    ) -> CommandResponse:
        details = None
        if field or provided or position is not None:
            details = ErrorDetails(field=field, provided=provided, position=position)
        return cls(
            ok=False,
            error=ErrorResponse(code=code, message=message, details=details),
        )

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


class ErrorCodes:
    """Standard error codes for CLI responses."""

    # Usage errors
    USAGE_001 = "USAGE_001"  # Invalid arguments or options

    # Input errors
    PARSE_001 = "PARSE_001"  # Expression does not parse
    RING_001 = "RING_001"  # Element outside its ring or invalid operand
    ARITY_001 = "ARITY_001"  # Operands over different variable sets
    ORACLE_001 = "ORACLE_001"  # Oracle bounds exceed their ceilings

    # IO errors
    IO_001 = "IO_001"  # Settings file not found
    IO_002 = "IO_002"  # Settings file invalid

    # Everything else
    INTERNAL_001 = "INTERNAL_001"
