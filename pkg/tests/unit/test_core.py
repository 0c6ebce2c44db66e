"""Unit tests for core workflows."""

from __future__ import annotations

import json
from io import StringIO
from typing import TYPE_CHECKING

import pytest

from posyring.core import (
    ValidationError,
    build_context,
    format_bool,
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
)
from posyring.io import FileStorage
from posyring.logging import Events, Logger
from posyring.parser import ParseError
from posyring.utils import RingConstraintError

if TYPE_CHECKING:
    from pathlib import Path


class TestLoadSettings:
    """Tests for load_settings."""

    def test_defaults_without_file(self, tmp_path: Path) -> None:
        storage = FileStorage(default_path=tmp_path / "posyring.json")
        settings = load_settings(storage, None)
        assert settings.log_level == "warn"

    def test_log_level_override(self, tmp_path: Path) -> None:
        """The command-line level should replace the file level."""
        path = tmp_path / "posyring.json"
        path.write_text(json.dumps({"log_level": "error", "atomic_bound": 4}))
        settings = load_settings(FileStorage(), path, log_level="DEBUG")
        assert settings.log_level == "debug"
        assert settings.atomic_bound == 4

    def test_invalid_log_level(self, tmp_path: Path) -> None:
        storage = FileStorage(default_path=tmp_path / "posyring.json")
        with pytest.raises(ValidationError, match="Invalid log level: loud"):
            load_settings(storage, None, log_level="loud")


class TestBuildContext:
    """Tests for build_context."""

    def test_explicit_variables(self) -> None:
        ctx = build_context("a, b", ["b + a"], "laurent")
        assert ctx.variables == ("a", "b")
        assert ctx.ring_kind == "laurent"

    def test_inferred_variables(self) -> None:
        """Without --vars the names are taken in order of appearance."""
        ctx = build_context(None, ["y + x", "z"], "posy")
        assert ctx.variables == ("y", "x", "z")

    def test_inferred_from_generator_list(self) -> None:
        ctx = build_context(None, ["y - 1; x*y - x"], "laurent")
        assert ctx.variables == ("y", "x")

    def test_invalid_variables(self) -> None:
        with pytest.raises(ValidationError, match="Duplicate variable name: x"):
            build_context("x,x", [], "posy")

    def test_format_bool(self) -> None:
        assert format_bool(True) == "true"
        assert format_bool(False) == "false"


class TestRunMember:
    """Tests for run_member."""

    def test_posy_certificate(self) -> None:
        outcome = run_member("x^(1/2) - 1", "x^(1/4) - 1", certificate=True)
        assert outcome.result is True
        assert outcome.lines == [
            "true",
            "scale: 4",
            "saturation_power: 0",
            "cofactor 1: x + 1",
            "ring_cofactor 1: x^(1/4) + 1",
        ]
        assert outcome.witness is not None
        assert outcome.witness.scale == 4

    def test_laurent_certificate(self) -> None:
        outcome = run_member("x^-1 - 1", "x - 1", ring="laurent", certificate=True)
        assert outcome.lines == [
            "true",
            "saturation_power: 0",
            "cofactor 1: -1",
            "ring_cofactor 1: -x^-1",
        ]
        assert outcome.witness is not None
        assert outcome.witness.scale is None

    def test_non_member_has_no_witness(self) -> None:
        outcome = run_member(
            "x^(1/2) - 1", "x^(1/3) - 1; x^(1/5) - 1", variables="x", certificate=True
        )
        assert outcome.result is False
        assert outcome.lines == ["false"]
        assert outcome.witness is None

    def test_unsupported_ring(self) -> None:
        with pytest.raises(ValidationError, match="Unsupported ring 'boolean'"):
            run_member("x", "x", ring="boolean")

    def test_laurent_rejects_fractional_exponent(self) -> None:
        with pytest.raises(ParseError, match="Non-integer exponent"):
            run_member("x^(1/2)", "x - 1", ring="laurent")

    def test_generator_list_without_variables(self) -> None:
        outcome = run_member("x^(1/2) - 1", "x^(1/3) - 1; x^(1/5) - 1")
        assert outcome.lines == ["false"]

    def test_undeclared_variable(self) -> None:
        with pytest.raises(ParseError, match="Unknown variable 'y'"):
            run_member("y", "x - 1", variables="x")


class TestBasisWorkflows:
    """Tests for run_groebner and run_saturate."""

    def test_groebner(self) -> None:
        outcome = run_groebner("x^2 - 1; x^3 - 1", variables="x")
        assert outcome.result == ["x - 1"]
        assert outcome.lines == ["x - 1"]

    def test_groebner_zero_ideal(self) -> None:
        outcome = run_groebner("0")
        assert outcome.result == []
        assert outcome.lines == ["0"]

    def test_groebner_rejects_negative_exponent(self) -> None:
        with pytest.raises(ParseError, match="Negative exponent"):
            run_groebner("x^-1 - 1")

    def test_groebner_logs_completion(self) -> None:
        stream = StringIO()
        logger = Logger(run_id="test", stream=stream, min_level="debug")
        run_groebner("x*y - 1; x - y", variables="x,y", logger=logger)
        events = [json.loads(line)["event"] for line in stream.getvalue().splitlines()]
        assert Events.GROEBNER_COMPLETED in events

    def test_saturate(self) -> None:
        assert run_saturate("x*y - x", variables="x,y").lines == ["y - 1"]

    def test_generator_list_without_variables(self) -> None:
        assert run_groebner("x^2 - 1; x^3 - 1").lines == ["x - 1"]
        assert run_saturate("x*y - x; x^2*y - x^2").lines == ["y - 1"]


class TestElementWorkflows:
    """Tests for the single-element workflows."""

    def test_normalize(self) -> None:
        assert run_normalize("x^-2 + x").lines == ["x^3 + 1"]

    def test_scale(self) -> None:
        assert run_scale("x^(1/2) + x^(1/3)", 6).lines == ["x^3 + x^2"]

    def test_scale_rejects_zero(self) -> None:
        with pytest.raises(RingConstraintError):
            run_scale("x", 0)

    def test_pi(self) -> None:
        outcome = run_pi("x^(1/2); x^(1/3) + 1")
        assert outcome.result == 6
        assert outcome.lines == ["6"]

    def test_generator(self) -> None:
        assert run_generator("x - 1; x^(1/2) - 1").lines == ["x^(1/2) - 1"]

    def test_eval(self) -> None:
        outcome = run_eval("x^-1 + y", "x=2,y=3", variables="x,y")
        assert outcome.result == "7/2"

    def test_eval_infers_point_variables(self) -> None:
        """Names only present in the point still become variables."""
        assert run_eval("x^-1", "x=2,y=5").lines == ["1/2"]

    def test_proper(self) -> None:
        outcome = run_proper("x - 1; y - 1", variables="x,y")
        assert outcome.result is True
        assert outcome.lines == ["true"]

    def test_improper(self) -> None:
        assert run_proper("x + y; x + 2*y").lines == ["false"]

    def test_unit(self) -> None:
        assert run_unit("3*x^-2*y", ring="laurent").result is True
        assert run_unit("x^(1/2) + 1").result is False


class TestRunAtomic:
    """Tests for run_atomic."""

    def test_atomic(self) -> None:
        outcome = run_atomic("x + 2", 20)
        assert outcome.lines == ["atomic (Eisenstein p=2)"]
        assert isinstance(outcome.result, dict)
        assert outcome.result["status"] == "atomic"
        assert outcome.result["prime"] == 2

    def test_not_atomic(self) -> None:
        outcome = run_atomic("x - 1", 5)
        assert outcome.lines == ["not atomic (n=2: x - 1 divides x^2 - 1)"]
        assert isinstance(outcome.result, dict)
        assert outcome.result["factor"] == "x - 1"
        assert outcome.result["cofactor"] == "x + 1"
        assert outcome.result["scaled"] == "x^2 - 1"

    def test_unknown(self) -> None:
        outcome = run_atomic("x^2 + 1", 2)
        assert outcome.lines == ["unknown up to n=2"]
        assert isinstance(outcome.result, dict)
        assert outcome.result["factor"] is None


class TestRunOracle:
    """Tests for run_oracle."""

    def test_counts(self) -> None:
        outcome = run_oracle(seed=1, count=3, arity=1)
        assert isinstance(outcome.result, dict)
        assert outcome.result["instances"] == 3
        assert outcome.result["disagreements"] == 0
        assert outcome.lines[0] == "seed: 1"

    def test_count_must_be_positive(self) -> None:
        with pytest.raises(ValidationError, match="count must be positive"):
            run_oracle(seed=0, count=0)

    def test_arity_must_be_positive(self) -> None:
        with pytest.raises(ValidationError, match="Arity must be positive"):
            run_oracle(seed=0, count=1, arity=0)
