"""Core workflows for posyring.

Each ``run_*`` function parses its textual inputs, calls the library and
returns a ``CommandResult`` holding both the machine-readable answer and its
plain-text rendering. Surface layers (the CLI) only choose the output format.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, cast

from pydantic import ValidationError as PydanticValidationError

from .io import parse_point_arg, parse_variables_arg
from .laurent import (
    clear_factor,
    evaluate,
    is_proper,
    is_unit_laurent,
    member_laurent,
    saturation_basis,
)
from .models import (
    CommandResult,
    EngineSettings,
    OracleConfig,
    RingContext,
    WitnessPayload,
)
from .oracle import check_instance, random_instances
from .parser import format_element, infer_variables, parse, parse_generators
from .polycore import buchberger
from .posy import (
    AtomicityVerdict,
    Posynomial,
    atomic_status,
    is_unit_posy,
    member_posy,
    phi,
    pi,
    principal_generator,
)
from .utils import format_rational

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from .laurent import LaurentPolynomial, LaurentWitness
    from .logging import Logger
    from .models import RingKind
    from .polycore import Polynomial, TermAlgebra
    from .posy import PosyWitness
    from .protocols import SettingsLoaderProtocol

MEMBERSHIP_RINGS: tuple[RingKind, ...] = ("laurent", "posy")


class ValidationError(ValueError):
    """Error raised when request validation fails."""


def validation_message(exc: PydanticValidationError) -> str:
    errors = exc.errors()
    if not errors:
        return str(exc)
    return str(errors[0]["msg"]).removeprefix("Value error, ")


def load_settings(
    storage: SettingsLoaderProtocol,
    path: Path | None,
    *,
    log_level: str | None = None,
) -> EngineSettings:
    """Load settings and apply the command-line log level override."""
    settings = storage.load_settings(path)
    if log_level is None:
        return settings
    try:
        return EngineSettings.model_validate(
            {**settings.model_dump(), "log_level": log_level}
        )
    except PydanticValidationError as exc:
        raise ValidationError(f"Invalid log level: {log_level}") from exc


def build_context(
    variables: str | None, texts: Sequence[str], ring_kind: RingKind
) -> RingContext:
    """Ring context from ``--vars`` or, when absent, from the names in ``texts``."""
    if variables is not None:
        names: Sequence[str] = parse_variables_arg(variables)
    else:
        names = infer_variables(texts)
    try:
        return RingContext(variables=names, ring_kind=ring_kind)
    except PydanticValidationError as exc:
        raise ValidationError(validation_message(exc)) from exc


def _check_ring(ring: str, allowed: Sequence[str]) -> RingKind:
    if ring not in allowed:
        raise ValidationError(
            f"Unsupported ring {ring!r}; expected one of: {', '.join(allowed)}"
        )
    return cast("RingKind", ring)


def format_bool(value: bool) -> str:
    return "true" if value else "false"


def _format_all(elements: Sequence[TermAlgebra], ctx: RingContext) -> list[str]:
    return [format_element(element, ctx.variables) for element in elements]


def _witness_lines(payload: WitnessPayload) -> list[str]:
    lines = []
    if payload.scale is not None:
        lines.append(f"scale: {payload.scale}")
    lines.append(f"saturation_power: {payload.saturation_power}")
    for index, cofactor in enumerate(payload.cofactors, start=1):
        lines.append(f"cofactor {index}: {cofactor}")
    for index, cofactor in enumerate(payload.ring_cofactors, start=1):
        lines.append(f"ring_cofactor {index}: {cofactor}")
    return lines


def _laurent_payload(witness: LaurentWitness, ctx: RingContext) -> WitnessPayload:
    return WitnessPayload(
        saturation_power=witness.saturation_power,
        cofactors=_format_all(witness.cofactors, ctx),
        ring_cofactors=_format_all(witness.laurent_cofactors, ctx),
    )


def _posy_payload(witness: PosyWitness, ctx: RingContext) -> WitnessPayload:
    return WitnessPayload(
        saturation_power=witness.laurent.saturation_power,
        cofactors=_format_all(witness.laurent.cofactors, ctx),
        ring_cofactors=_format_all(witness.cofactors, ctx),
        scale=witness.scale,
    )


def run_member(
    expression: str,
    ideal: str,
    *,
    ring: str = "posy",
    variables: str | None = None,
    certificate: bool = False,
    logger: Logger | None = None,
) -> CommandResult:
    ring_kind = _check_ring(ring, MEMBERSHIP_RINGS)
    ctx = build_context(variables, [expression, ideal], ring_kind)
    g = parse(expression, ctx)
    generators = parse_generators(ideal, ctx)

    payload = None
    if ring_kind == "laurent":
        result = member_laurent(
            g, generators, ctx.order(), certificate=certificate, logger=logger
        )
        member = result.member
        if result.witness is not None:
            payload = _laurent_payload(result.witness, ctx)
    else:
        posy_result = member_posy(
            g, generators, ctx.order(), certificate=certificate, logger=logger
        )
        member = posy_result.member
        if posy_result.witness is not None:
            payload = _posy_payload(posy_result.witness, ctx)

    lines = [format_bool(member)]
    if payload is not None:
        lines.extend(_witness_lines(payload))
    return CommandResult(result=member, lines=lines, witness=payload)


def _basis_result(elements: Sequence[Polynomial], ctx: RingContext) -> CommandResult:
    rendered = _format_all(elements, ctx)
    # The zero ideal has the empty basis.
    return CommandResult(result=rendered, lines=rendered or ["0"])


def run_groebner(
    ideal: str,
    *,
    variables: str | None = None,
    logger: Logger | None = None,
) -> CommandResult:
    ctx = build_context(variables, [ideal], "polynomial")
    generators = parse_generators(ideal, ctx)
    basis = buchberger(generators, ctx.order(), logger=logger)
    return _basis_result(basis.elements, ctx)


def run_saturate(
    ideal: str,
    *,
    variables: str | None = None,
    logger: Logger | None = None,
) -> CommandResult:
    ctx = build_context(variables, [ideal], "laurent")
    generators = parse_generators(ideal, ctx)
    basis = saturation_basis(generators, ctx.order(), logger=logger)
    return _basis_result(basis.elements, ctx)


def run_normalize(expression: str, *, variables: str | None = None) -> CommandResult:
    ctx = build_context(variables, [expression], "laurent")
    f = cast("LaurentPolynomial", parse(expression, ctx))
    rendered = format_element(clear_factor(f), ctx.variables)
    return CommandResult(result=rendered, lines=[rendered])


def run_scale(
    expression: str, m: int, *, variables: str | None = None
) -> CommandResult:
    ctx = build_context(variables, [expression], "posy")
    f = cast("Posynomial", parse(expression, ctx))
    rendered = format_element(phi(m, f), ctx.variables)
    return CommandResult(result=rendered, lines=[rendered])


def run_pi(expressions: str, *, variables: str | None = None) -> CommandResult:
    ctx = build_context(variables, [expressions], "posy")
    elements = parse_generators(expressions, ctx)
    value = pi(elements)
    return CommandResult(result=value, lines=[str(value)])


def run_generator(ideal: str, *, variables: str | None = None) -> CommandResult:
    ctx = build_context(variables, [ideal], "posy")
    generators = parse_generators(ideal, ctx)
    rendered = format_element(principal_generator(generators), ctx.variables)
    return CommandResult(result=rendered, lines=[rendered])


def _point_names(point: str) -> list[str]:
    return [
        raw.partition("=")[0].strip() for raw in point.split(",") if raw.strip()
    ]


def run_eval(
    expression: str, point: str, *, variables: str | None = None
) -> CommandResult:
    if variables is None:
        # Names seen in the expression first, then those only in the point.
        ctx = build_context(
            None, [expression, " ".join(_point_names(point))], "laurent"
        )
    else:
        ctx = build_context(variables, [expression], "laurent")
    f = cast("LaurentPolynomial", parse(expression, ctx))
    value = format_rational(evaluate(f, parse_point_arg(point, ctx.variables)))
    return CommandResult(result=value, lines=[value])


def run_proper(
    ideal: str,
    *,
    variables: str | None = None,
    logger: Logger | None = None,
) -> CommandResult:
    ctx = build_context(variables, [ideal], "laurent")
    generators = parse_generators(ideal, ctx)
    proper = is_proper(generators, ctx.order(), logger=logger)
    return CommandResult(result=proper, lines=[format_bool(proper)])


def run_unit(
    expression: str, *, ring: str = "posy", variables: str | None = None
) -> CommandResult:
    ring_kind = _check_ring(ring, MEMBERSHIP_RINGS)
    ctx = build_context(variables, [expression], ring_kind)
    f = parse(expression, ctx)
    if isinstance(f, Posynomial):
        unit = is_unit_posy(f)
    else:
        unit = is_unit_laurent(cast("LaurentPolynomial", f))
    return CommandResult(result=unit, lines=[format_bool(unit)])


def describe_verdict(verdict: AtomicityVerdict, name: str) -> str:
    if verdict.status == "atomic":
        return f"atomic (Eisenstein p={verdict.prime})"
    if verdict.status == "not_atomic":
        factor = format_element(cast("Polynomial", verdict.factor), (name,))
        scaled = format_element(cast("Polynomial", verdict.scaled), (name,))
        return f"not atomic (n={verdict.scale_index}: {factor} divides {scaled})"
    return f"unknown up to n={verdict.bound}"


def run_atomic(
    expression: str,
    bound: int,
    *,
    variables: str | None = None,
    logger: Logger | None = None,
) -> CommandResult:
    ctx = build_context(variables, [expression], "posy")
    f = cast("Posynomial", parse(expression, ctx))
    verdict = atomic_status(f, bound, logger=logger)
    name = ctx.variables[0]

    def render(polynomial: Polynomial | None) -> str | None:
        if polynomial is None:
            return None
        return format_element(polynomial, (name,))

    result: dict[str, str | int | bool | None] = {
        "status": verdict.status,
        "prime": verdict.prime,
        "n": verdict.scale_index,
        "factor": render(verdict.factor),
        "cofactor": render(verdict.cofactor),
        "scaled": render(verdict.scaled),
        "bound": verdict.bound,
    }
    return CommandResult(result=result, lines=[describe_verdict(verdict, name)])


def run_oracle(
    *,
    seed: int,
    count: int,
    arity: int | None = None,
    config: OracleConfig | None = None,
    logger: Logger | None = None,
) -> CommandResult:
    """Cross-check the Groebner decision against the independent oracles."""
    if count < 1:
        raise ValidationError("Instance count must be positive")
    if arity is not None and arity < 1:
        raise ValidationError("Arity must be positive")
    members = confirmed = disagreements = 0
    for instance in random_instances(seed, count, arity):
        check = check_instance(instance, config, logger=logger)
        members += check.groebner
        confirmed += check.linear_algebra
        disagreements += not check.consistent
    result: dict[str, str | int | bool | None] = {
        "seed": seed,
        "instances": count,
        "members": members,
        "linear_algebra_confirmed": confirmed,
        "disagreements": disagreements,
    }
    lines = [f"{key}: {value}" for key, value in result.items()]
    return CommandResult(result=result, lines=lines)

