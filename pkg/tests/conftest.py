"""Root test configuration.

Shared fixtures for all test tiers. Each tier (unit, integration, quality)
has its own conftest applying its marker and timeout.
"""

from __future__ import annotations

from io import StringIO

import pytest

from posyring.logging import Logger


def pytest_configure(config: pytest.Config) -> None:
    """Register custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests (<250ms)")
    config.addinivalue_line("markers", "integration: Integration tests (<5s)")
    config.addinivalue_line("markers", "quality: Quality tests (<30s)")


@pytest.fixture
def log_stream() -> StringIO:
    """In-memory stream collecting JSONL log lines."""
    return StringIO()


@pytest.fixture
def debug_logger(log_stream: StringIO) -> Logger:
    """Logger writing every level to ``log_stream``."""
    return Logger(run_id="test", stream=log_stream, min_level="debug")
