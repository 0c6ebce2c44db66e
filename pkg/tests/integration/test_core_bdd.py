"""Integration tests for core workflows."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from posyring.cli import run
from posyring.core import load_settings, run_atomic, run_member
from posyring.io import FileStorage, InputError, SettingsError

if TYPE_CHECKING:
    from io import StringIO
    from pathlib import Path

    from posyring.logging import Logger


def test_settings_file_drives_atomic_bound(tmp_path: Path) -> None:
    # Given a settings file with a custom atomicity bound
    path = tmp_path / "posyring.json"
    path.write_text(json.dumps({"atomic_bound": 3, "log_level": "error"}))

    # When loading it and running the atomicity check with its bound
    settings = load_settings(FileStorage(), path)
    outcome = run_atomic("x^2 + 1", settings.atomic_bound)

    # Then the bound is enough to find the factor at n = 3
    assert settings.log_level == "error"
    assert outcome.lines == ["not atomic (n=3: x^2 + 1 divides x^6 + 1)"]


def test_missing_explicit_settings_file(tmp_path: Path) -> None:
    # Given a path that does not exist
    path = tmp_path / "absent.json"

    # When loading settings from it
    # Then an input error caused by the missing file is raised
    with pytest.raises(InputError) as excinfo:
        load_settings(FileStorage(), path)
    assert isinstance(excinfo.value.__cause__, FileNotFoundError)


def test_invalid_settings_file(tmp_path: Path) -> None:
    # Given a settings file with an unknown key
    path = tmp_path / "posyring.json"
    path.write_text(json.dumps({"atomic_bound": 5, "colour": "blue"}))

    # When loading it
    # Then a settings error is raised
    with pytest.raises(SettingsError):
        load_settings(FileStorage(), path)


def test_member_certificate_logs_events(
    debug_logger: Logger, log_stream: StringIO
) -> None:
    # Given a membership query that needs a certificate and a debug logger

    # When deciding it with debug logging
    outcome = run_member(
        "x^(1/2) - 1", "x^(1/4) - 1", certificate=True, logger=debug_logger
    )

    # Then the decision, the basis and the certificate are all logged
    lines = log_stream.getvalue().splitlines()
    events = [json.loads(line)["event"] for line in lines]
    assert outcome.result is True
    assert "groebner_completed" in events
    assert "certificate_built" in events
    assert events[-1] == "membership_decided"


def test_cli_debug_run_writes_jsonl(
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    # Given a working directory with no settings file
    monkeypatch.chdir(tmp_path)

    # When running a saturation with debug logging
    code = run(
        ["--log-level", "debug", "saturate", "--vars", "x,y", "--ideal", "x*y - x"]
    )

    # Then stdout carries only the answer and stderr only JSONL entries
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == "y - 1\n"
    entries = [json.loads(line) for line in captured.err.splitlines()]
    assert {entry["run_id"] for entry in entries} == {entries[0]["run_id"]}
    assert "groebner_started" in [entry["event"] for entry in entries]
    assert entries[-1]["data"] == {"witness": False}


def test_cli_failure_logs_validation_event(
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    # Given a working directory with no settings file
    monkeypatch.chdir(tmp_path)

    # When a request names an undeclared variable
    code = run(["normalize", "--vars", "x", "y"])

    # Then the rejection is logged before the run failure
    captured = capsys.readouterr()
    events = [
        json.loads(line)["event"]
        for line in captured.err.splitlines()
        if line.startswith("{")
    ]
    assert code == 1
    assert events == ["validation_failed", "run_failed"]
    assert "Error: Unknown variable 'y'" in captured.err
