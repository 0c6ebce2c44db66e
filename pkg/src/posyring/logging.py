"""Structured JSONL logging.

Every log entry is a Pydantic model serialized as one JSON object per line
on the error stream, so standard output carries only command results.

Log format: {timestamp, level, event, run_id, phase, message, data}
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from datetime import datetime, timezone
from time import perf_counter
from typing import TYPE_CHECKING, Literal, TextIO

from pydantic import BaseModel, Field

if TYPE_CHECKING:
    from collections.abc import Iterator

LogLevel = Literal["debug", "info", "warn", "error"]
LogData = dict[str, str | int | float | bool | None]

_LEVEL_ORDER: dict[str, int] = {"debug": 0, "info": 1, "warn": 2, "error": 3}


class LogEntry(BaseModel):
    """Single log line in JSONL format."""

    timestamp: str = Field(..., description="ISO-8601 timestamp")
    level: LogLevel = Field(..., description="Log level")
    event: str = Field(
        ..., description="Event type (e.g., run_started, groebner_completed)"
    )
    run_id: str = Field(..., description="Command invocation identifier")
    phase: str | None = Field(None, description="Computation phase if applicable")
    message: str = Field(..., description="Human-readable log message")
    data: LogData | None = Field(None, description="Structured event data")


class Logger:
    """Structured JSONL logger bound to one command invocation.

    Usage:
        logger = Logger(run_id=uuid4().hex, min_level="debug")
        logger.info(Events.RUN_STARTED, "member started")
        with logger.timed(
            Events.GROEBNER_COMPLETED, "Groebner basis computed", phase="groebner"
        ) as data:
            data["basis_size"] = 3
    """

    def __init__(
        self,
        run_id: str,
        stream: TextIO | None = None,
        min_level: LogLevel = "info",
    ) -> None:
        self.run_id = run_id
        self.stream = stream or sys.stderr
        self.min_level = min_level

    def enabled(self, level: LogLevel) -> bool:
        return _LEVEL_ORDER[level] >= _LEVEL_ORDER[self.min_level]

    def _emit(
        self,
        level: LogLevel,
        event: str,
        message: str,
        phase: str | None = None,
        data: LogData | None = None,
    ) -> None:
        if not self.enabled(level):
            return
        entry = LogEntry(
            timestamp=datetime.now(timezone.utc).isoformat(),
            level=level,
            event=event,
            run_id=self.run_id,
            phase=phase,
            message=message,
            data=data,
        )
        self.stream.write(entry.model_dump_json() + "\n")
        self.stream.flush()

    def debug(
        self,
        event: str,
        message: str,
        *,
        phase: str | None = None,
        data: LogData | None = None,
    ) -> None:
        self._emit("debug", event, message, phase, data)

    def info(
        self,
        event: str,
        message: str,
        *,
        phase: str | None = None,
        data: LogData | None = None,
    ) -> None:
        self._emit("info", event, message, phase, data)

    def warn(
        self,
        event: str,
        message: str,
        *,
        phase: str | None = None,
        data: LogData | None = None,
    ) -> None:
        self._emit("warn", event, message, phase, data)

    def error(
        self,
        event: str,
        message: str,
        *,
        phase: str | None = None,
        data: LogData | None = None,
    ) -> None:
        self._emit("error", event, message, phase, data)

    @contextmanager
    def timed(
        self,
        event: str,
        message: str,
        *,
        phase: str | None = None,
        level: LogLevel = "debug",
    ) -> Iterator[LogData]:
        """Log ``event`` when the block completes, with ``elapsed_ms`` added.

        The block may fill the yielded dict with further fields. Nothing is
        logged when the block raises.
        """
        data: LogData = {}
        started = perf_counter()
        yield data
        data["elapsed_ms"] = round((perf_counter() - started) * 1000, 3)
        self._emit(level, event, message, phase, data)


class Events:
    """Standard event names for logging."""

    # Lifecycle events
    RUN_STARTED = "run_started"
    RUN_COMPLETED = "run_completed"
    RUN_FAILED = "run_failed"

    # Data events
    DATA_LOADED = "data_loaded"

    # Algebra events
    GROEBNER_STARTED = "groebner_started"
    GROEBNER_COMPLETED = "groebner_completed"
    MEMBERSHIP_DECIDED = "membership_decided"
    CERTIFICATE_BUILT = "certificate_built"
    ATOMICITY_CHECKED = "atomicity_checked"
    ORACLE_CHECKED = "oracle_checked"

    # Error events
    VALIDATION_FAILED = "validation_failed"
