"""Protocol interfaces for settings loading.

Keeps file access out of the core workflows so tests can inject in-memory
settings.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from pathlib import Path

    from .models import EngineSettings


class SettingsLoaderProtocol(Protocol):
    """Protocol for loading engine settings."""

    def load_settings(self, path: Path | None = None) -> EngineSettings:
        """Load and validate engine settings.

        Args:
            path: Settings JSON file, or None for the default location.

        Returns:
            Validated EngineSettings; defaults when no default file exists.

        Raises:
            InputError: If an explicit file is missing or cannot be validated.
        """
        ...
