from __future__ import annotations

import json
from pathlib import Path

from pydantic import ValidationError

from .laurent import Point
from .models import EngineSettings
from .utils import PosyringError, as_rational, normalize_names

DEFAULT_SETTINGS = Path("config/posyring.json")


class InputError(ValueError):
    """Error raised when settings files or option values cannot be read."""


class SettingsError(InputError):
    """Settings file exists but is not valid settings JSON."""


def load_settings_json(path: Path) -> EngineSettings:
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise InputError(f"Settings file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SettingsError(f"Settings JSON is invalid: {path}") from exc
    try:
        return EngineSettings.model_validate(data)
    except ValidationError as exc:
        raise SettingsError(f"Settings JSON failed validation: {path}") from exc


def parse_variables_arg(value: str) -> list[str]:
    names = normalize_names(value.split(","))
    if not names:
        raise InputError("Variable list cannot be empty")
    return names


def parse_point_arg(value: str, variables: tuple[str, ...]) -> Point:
    """Parse ``v1=a1,v2=a2`` into a point ordered like ``variables``."""
    assignments: dict[str, str] = {}
    for raw in value.split(","):
        raw = raw.strip()
        if not raw:
            continue
        name, separator, literal = raw.partition("=")
        name = name.strip()
        if not separator or not name:
            raise InputError(f"Invalid point assignment: {raw}")
        if name in assignments:
            raise InputError(f"Variable {name} is assigned twice")
        assignments[name] = literal
    unknown = sorted(set(assignments) - set(variables))
    if unknown:
        raise InputError(f"Unknown variables in point: {', '.join(unknown)}")
    missing = [name for name in variables if name not in assignments]
    if missing:
        raise InputError(f"Point is missing values for: {', '.join(missing)}")
    try:
        coordinates = [as_rational(assignments[name]) for name in variables]
    except PosyringError as exc:
        raise InputError(str(exc)) from exc
    try:
        return Point(coordinates=coordinates)
    except ValidationError as exc:
        raise InputError(
            f"Point coordinates must be nonzero rationals: {value}"
        ) from exc


class FileStorage:
    """File-based storage implementation.

    Implements SettingsLoaderProtocol by delegating to the module-level
    loader functions.
    """

    def __init__(self, default_path: Path = DEFAULT_SETTINGS) -> None:
        self.default_path = default_path

    def load_settings(self, path: Path | None = None) -> EngineSettings:
        """Load settings from ``path``, or from the default file if it exists.

        A missing default file yields the built-in defaults; an explicit
        path must exist.
        """
        if path is None:
            if not self.default_path.exists():
                return EngineSettings()
            path = self.default_path
        return load_settings_json(path)
