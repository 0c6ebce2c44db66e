from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, cast
from uuid import uuid4

import typer
from pydantic import ValidationError as PydanticValidationError

from .core import (
    ValidationError,
    load_settings,
    run_atomic,
    run_eval,
    run_generator,
    run_groebner,
    run_member,
    run_normalize,
    run_oracle,
    run_pi,
    run_proper,
    run_saturate,
    run_scale,
    run_unit,
    validation_message,
)
from .io import FileStorage, InputError, SettingsError
from .logging import Events, Logger
from .models import OracleConfig
from .parser import ParseError
from .polycore import ArityMismatchError
from .responses import CommandResponse, ErrorCodes
from .utils import PosyringError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from .logging import LogData
    from .models import CommandResult, EngineSettings

app = typer.Typer(add_completion=False)

PROG_NAME = "posyring"
ORACLE_ENV = "POSYRING_ORACLE"

# Base of typer.BadParameter: the UsageError of whichever click copy typer runs on
UsageError = cast("type[typer.BadParameter]", typer.BadParameter.__base__)

_EXPECTED_ERRORS = (PosyringError, InputError, ValidationError, PydanticValidationError)

ExpressionArgument = Annotated[str, typer.Argument(help="Element, e.g. 'x^(1/2) - 1'")]
IdealOption = Annotated[
    str, typer.Option(help="Generators separated by ';', e.g. 'x - 1; y - 1'")
]
VarsOption = Annotated[
    str | None,
    typer.Option(
        "--vars",
        help="Comma-separated variables, smallest first (default: as they appear)",
    ),
]
RingOption = Annotated[str, typer.Option(help="Ring of the query: laurent or posy")]
JsonOption = Annotated[
    bool, typer.Option("--json", help="Print the JSON envelope instead of text")
]


class CliState:
    """Options of the root command shared by every subcommand."""

    def __init__(
        self, config: Path | None = None, log_level: str | None = None
    ) -> None:
        self.config = config
        self.log_level = log_level


@app.callback()
def root(
    ctx: typer.Context,
    config: Annotated[
        Path | None,
        typer.Option(help="Settings JSON (default: config/posyring.json if present)"),
    ] = None,
    log_level: Annotated[
        str | None,
        typer.Option(help="Minimum level of JSONL logs on stderr (debug..error)"),
    ] = None,
) -> None:
    """Exact arithmetic and ideal membership for posynomial and Laurent rings."""
    ctx.obj = CliState(config=config, log_level=log_level)


def _error_code(exc: Exception) -> str:
    if isinstance(exc, ParseError):
        return ErrorCodes.PARSE_001
    if isinstance(exc, ArityMismatchError):
        return ErrorCodes.ARITY_001
    if isinstance(exc, SettingsError):
        return ErrorCodes.IO_002
    if isinstance(exc, InputError):
        if isinstance(exc.__cause__, FileNotFoundError):
            return ErrorCodes.IO_001
        return ErrorCodes.USAGE_001
    if isinstance(exc, PydanticValidationError):
        return ErrorCodes.ORACLE_001
    if isinstance(exc, ValidationError):
        return ErrorCodes.USAGE_001
    return ErrorCodes.RING_001


def _report_error(exc: Exception, as_json: bool) -> None:
    if isinstance(exc, PydanticValidationError):
        message = validation_message(exc)
    else:
        message = str(exc)
    if as_json:
        position = exc.position if isinstance(exc, ParseError) else None
        response = CommandResponse.failure(
            _error_code(exc), message, position=position
        )
        typer.echo(response.to_json())
    typer.echo(f"Error: {message}", err=True)


def _execute(
    ctx: typer.Context,
    command: str,
    as_json: bool,
    action: Callable[[EngineSettings, Logger], CommandResult],
    data: LogData | None = None,
) -> None:
    state = ctx.find_object(CliState) or CliState()
    logger = Logger(run_id=uuid4().hex, min_level="warn")
    try:
        settings = load_settings(
            FileStorage(), state.config, log_level=state.log_level
        )
        logger.min_level = settings.log_level
        logger.info(
            Events.RUN_STARTED,
            f"{command} started",
            data={"command": command, **(data or {})},
        )
        logger.debug(
            Events.DATA_LOADED,
            "Settings loaded",
            data={
                "config": str(state.config) if state.config else None,
                "atomic_bound": settings.atomic_bound,
            },
        )
        outcome = action(settings, logger)
    except _EXPECTED_ERRORS as exc:
        if isinstance(exc, ParseError | ValidationError | InputError):
            logger.warn(
                Events.VALIDATION_FAILED,
                "Request rejected",
                data={"code": _error_code(exc)},
            )
        logger.error(Events.RUN_FAILED, f"{command} failed", data={"error": str(exc)})
        _report_error(exc, as_json)
        raise typer.Exit(code=1) from exc

    if as_json:
        typer.echo(CommandResponse.success(outcome).to_json())
    else:
        for line in outcome.lines:
            typer.echo(line)
    logger.info(
        Events.RUN_COMPLETED,
        f"{command} completed",
        data={"witness": outcome.witness is not None},
    )


@app.command()
def member(
    ctx: typer.Context,
    expression: ExpressionArgument,
    ideal: IdealOption,
    ring: RingOption = "posy",
    variables: VarsOption = None,
    certificate: Annotated[
        bool, typer.Option(help="Print cofactors certifying a positive answer")
    ] = False,
    as_json: JsonOption = False,
) -> None:
    """Decide whether the element lies in the ideal."""
    _execute(
        ctx,
        "member",
        as_json,
        lambda settings, logger: run_member(
            expression,
            ideal,
            ring=ring,
            variables=variables,
            certificate=certificate,
            logger=logger,
        ),
        data={"ring": ring, "certificate": certificate},
    )


@app.command()
def groebner(
    ctx: typer.Context,
    ideal: IdealOption,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Reduced lex Groebner basis of a polynomial ideal."""
    _execute(
        ctx,
        "groebner",
        as_json,
        lambda settings, logger: run_groebner(
            ideal, variables=variables, logger=logger
        ),
    )


@app.command()
def saturate(
    ctx: typer.Context,
    ideal: IdealOption,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Basis of the cleared ideal saturated by the product of all variables."""
    _execute(
        ctx,
        "saturate",
        as_json,
        lambda settings, logger: run_saturate(
            ideal, variables=variables, logger=logger
        ),
    )


@app.command()
def normalize(
    ctx: typer.Context,
    expression: ExpressionArgument,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Clear negative exponents of a Laurent polynomial."""
    _execute(
        ctx,
        "normalize",
        as_json,
        lambda settings, logger: run_normalize(expression, variables=variables),
    )


@app.command()
def scale(
    ctx: typer.Context,
    expression: ExpressionArgument,
    m: Annotated[int, typer.Option("--m", help="Positive exponent multiplier")],
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Multiply every exponent by m."""
    _execute(
        ctx,
        "scale",
        as_json,
        lambda settings, logger: run_scale(expression, m, variables=variables),
        data={"m": m},
    )


@app.command("pi")
def pi_command(
    ctx: typer.Context,
    expressions: Annotated[
        str, typer.Argument(help="Posynomials separated by ';'")
    ],
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Least m that makes every exponent times m an integer."""
    _execute(
        ctx,
        "pi",
        as_json,
        lambda settings, logger: run_pi(expressions, variables=variables),
    )


@app.command()
def generator(
    ctx: typer.Context,
    ideal: IdealOption,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Single generator of a univariate posynomial ideal."""
    _execute(
        ctx,
        "generator",
        as_json,
        lambda settings, logger: run_generator(ideal, variables=variables),
    )


@app.command("eval")
def eval_command(
    ctx: typer.Context,
    expression: ExpressionArgument,
    point: Annotated[
        str, typer.Option(help="Nonzero rational values, e.g. 'x=2,y=-1/3'")
    ],
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Evaluate a Laurent polynomial exactly at a point."""
    _execute(
        ctx,
        "eval",
        as_json,
        lambda settings, logger: run_eval(expression, point, variables=variables),
    )


@app.command()
def proper(
    ctx: typer.Context,
    ideal: IdealOption,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Whether the Laurent ideal is proper (does not contain 1)."""
    _execute(
        ctx,
        "proper",
        as_json,
        lambda settings, logger: run_proper(
            ideal, variables=variables, logger=logger
        ),
    )


@app.command()
def unit(
    ctx: typer.Context,
    expression: ExpressionArgument,
    ring: RingOption = "posy",
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Whether the element is invertible."""
    _execute(
        ctx,
        "unit",
        as_json,
        lambda settings, logger: run_unit(
            expression, ring=ring, variables=variables
        ),
        data={"ring": ring},
    )


@app.command()
def atomic(
    ctx: typer.Context,
    expression: ExpressionArgument,
    bound: Annotated[
        int | None,
        typer.Option(help="Largest n searched (default: settings atomic_bound)"),
    ] = None,
    variables: VarsOption = None,
    as_json: JsonOption = False,
) -> None:
    """Bounded atomicity check of a univariate posynomial."""
    _execute(
        ctx,
        "atomic",
        as_json,
        lambda settings, logger: run_atomic(
            expression,
            bound if bound is not None else settings.atomic_bound,
            variables=variables,
            logger=logger,
        ),
        data={"bound": bound},
    )


@app.command(hidden=True)
def oracle(
    ctx: typer.Context,
    seed: Annotated[int, typer.Option(help="Random seed of the instances")] = 0,
    count: Annotated[int, typer.Option(help="Number of instances")] = 20,
    arity: Annotated[
        int | None, typer.Option(help="Number of variables (default: random 1..3)")
    ] = None,
    lambda_max: Annotated[
        int | None, typer.Option(help="Override the settings lambda_max")
    ] = None,
    degree_max: Annotated[
        int | None, typer.Option(help="Override the settings degree_max")
    ] = None,
    as_json: JsonOption = False,
) -> None:
    """Cross-check membership answers on seeded random instances."""
    if os.environ.get(ORACLE_ENV) != "1":
        raise UsageError("No such command 'oracle'.", ctx)

    def action(settings: EngineSettings, logger: Logger) -> CommandResult:
        overrides = {
            key: value
            for key, value in (("lambda_max", lambda_max), ("degree_max", degree_max))
            if value is not None
        }
        config = OracleConfig.model_validate(
            {**settings.oracle.model_dump(), **overrides}
        )
        return run_oracle(
            seed=seed, count=count, arity=arity, config=config, logger=logger
        )

    _execute(ctx, "oracle", as_json, action, data={"seed": seed, "count": count})


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code.

    0 when an answer was computed (including "false"), 1 for usage, parse
    and ring constraint errors, 2 for anything unexpected.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in args
    try:
        code = app(args=args, standalone_mode=False, prog_name=PROG_NAME)
    except UsageError as exc:
        if as_json:
            typer.echo(
                CommandResponse.failure(
                    ErrorCodes.USAGE_001, exc.format_message()
                ).to_json()
            )
        exc.show()
        return 1
    except typer.Abort:
        typer.echo("Aborted!", err=True)
        return 1
    except Exception as exc:  # noqa: BLE001
        if as_json:
            typer.echo(
                CommandResponse.failure(ErrorCodes.INTERNAL_001, str(exc)).to_json()
            )
        typer.echo(f"Internal error: {exc}", err=True)
        return 2
    return code if isinstance(code, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
