from __future__ import annotations

import re
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .logging import LogLevel
from .polycore import MonomialOrder
from .utils import ELIMINATION_VARIABLE, normalize_name

RingKind = Literal["polynomial", "laurent", "posy"]

_VARIABLE_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9]*")


class RingContext(BaseModel):
    """Ambient ring of parsed expressions."""

    model_config = ConfigDict(frozen=True)

    variables: tuple[str, ...] = Field(
        ..., min_length=1, description="Variables from smallest to greatest"
    )
    ring_kind: RingKind = Field("posy", description="Admissible exponent set")

    @field_validator("variables", mode="before")
    @classmethod
    def normalize_variables(cls, value: object) -> tuple[str, ...]:
        if isinstance(value, str) or not isinstance(value, list | tuple):
            raise ValueError("variables must be a list of names")
        cleaned: list[str] = []
        for item in value:
            name = normalize_name(str(item))
            if not _VARIABLE_PATTERN.fullmatch(name):
                raise ValueError(f"Invalid variable name: {name!r}")
            if name == ELIMINATION_VARIABLE:
                raise ValueError(f"Variable name {name!r} is reserved")
            if name in cleaned:
                raise ValueError(f"Duplicate variable name: {name}")
            cleaned.append(name)
        return tuple(cleaned)

    @property
    def arity(self) -> int:
        return len(self.variables)

    def order(self) -> MonomialOrder:
        return MonomialOrder(variables=self.variables)


class OracleConfig(BaseModel):
    """Search bounds of the linear-algebra membership oracle."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda_max: Annotated[
        int, Field(ge=0, description="Largest power of x1*...*xn tried")
    ] = 6
    degree_max: Annotated[
        int, Field(ge=0, description="Largest total degree of the cofactors")
    ] = 8
    lambda_ceiling: Annotated[
        int, Field(ge=0, description="Upper limit accepted for lambda_max")
    ] = 6
    degree_ceiling: Annotated[
        int, Field(ge=0, description="Upper limit accepted for degree_max")
    ] = 8

    @model_validator(mode="after")
    def validate_ceilings(self) -> OracleConfig:
        if self.lambda_max > self.lambda_ceiling:
            raise ValueError(
                f"lambda_max {self.lambda_max} exceeds ceiling {self.lambda_ceiling}"
            )
        if self.degree_max > self.degree_ceiling:
            raise ValueError(
                f"degree_max {self.degree_max} exceeds ceiling {self.degree_ceiling}"
            )
        return self


class EngineSettings(BaseModel):
    """Settings file contents (config/posyring.json)."""

    model_config = ConfigDict(extra="forbid")

    log_level: LogLevel = Field("warn", description="Minimum level written to stderr")
    atomic_bound: Annotated[
        int, Field(ge=1, description="Default n bound of the atomicity search")
    ] = 20
    oracle: OracleConfig = Field(
        default_factory=OracleConfig, description="Oracle search bounds"
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, value: str) -> str:
        return str(value).strip().lower()


class WitnessPayload(BaseModel):
    """Serialized membership certificate."""

    saturation_power: int = Field(
        ..., description="Power of x1*...*xn multiplying F(g)"
    )
    cofactors: list[str] = Field(
        ..., description="Polynomial cofactors h_i of the cleared generators"
    )
    ring_cofactors: list[str] = Field(
        ..., description="Cofactors u_i with g = sum(u_i * f_i) in the query ring"
    )
    scale: int | None = Field(
        None, description="pi of the posynomial query, omitted for Laurent rings"
    )


class CommandResult(BaseModel):
    """Result of a core workflow, rendered by the CLI as text or JSON."""

    result: bool | int | str | list[str] | dict[str, str | int | bool | None] = Field(
        ..., description="Machine-readable answer"
    )
    lines: list[str] = Field(..., description="Plain-text rendering, one per line")
    witness: WitnessPayload | None = Field(
        None, description="Certificate, when one was requested and produced"
    )
