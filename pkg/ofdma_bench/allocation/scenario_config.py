"""
Line-based scenario documents.

One ``key = value`` pair per line, ``#`` starts a comment and list values
are comma separated::

    users = 2
    proportions = 0.75, 0.25   # normalized on load
    subcarriers = 4
    total_power_w = 10
"""

from __future__ import annotations

import logging
from pathlib import Path

from .exceptions import AllocationError
from .exceptions import ScenarioParseError
from .serializers import GA_FIELDS
from .serializers import ScenarioConfigSerializer
from .system import GaParams
from .system import Scenario

logger = logging.getLogger(__name__)

LIST_KEYS = frozenset({"proportions"})


def _first_message(detail) -> str:
    if isinstance(detail, dict):
        return _first_message(next(iter(detail.values())))
    if isinstance(detail, list):
        return _first_message(detail[0])
    return str(detail)


def _tokenize(text: str) -> tuple[dict[str, object], dict[str, int]]:
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    known = ScenarioConfigSerializer().fields
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not sep or not key:
            raise ScenarioParseError("expected 'key = value'", key or "?", number)
        if key not in known:
            raise ScenarioParseError("unknown key", key, number)
        if key in values:
            raise ScenarioParseError(f"duplicate key (first on line {lines[key]})", key, number)
        if not value:
            raise ScenarioParseError("missing value", key, number)
        if key in LIST_KEYS:
            values[key] = [item.strip() for item in value.split(",")]
        else:
            values[key] = value
        lines[key] = number
    return values, lines


def parse_scenario(text: str) -> Scenario:
    """
    Parse and validate a scenario document, applying defaults.

    Raises:
        ScenarioParseError: Naming the offending key, and its line when the
            key appears in the document.
    """
    values, lines = _tokenize(text)
    serializer = ScenarioConfigSerializer(data=values)
    if not serializer.is_valid():
        key, detail = next(iter(serializer.errors.items()))
        raise ScenarioParseError(_first_message(detail), key, lines.get(key))
    data = serializer.validated_data

    ga_overrides = {
        attr: data[key] for key, attr in GA_FIELDS.items() if key in data
    }
    try:
        ga_params = GaParams(**ga_overrides)
    except AllocationError as e:
        key = next(iter(k for k in GA_FIELDS if k in data), "ga_population")
        raise ScenarioParseError(e.message, key, lines.get(key)) from e

    try:
        scenario = Scenario(
            num_users=data["users"],
            num_subcarriers=data["subcarriers"],
            total_power=data["total_power_w"],
            proportions=tuple(data.get("proportions", ())),
            mean_snr_db=data["mean_snr_db"],
            method=data["method"],
            seed=data["seed"],
            ga_params=ga_params,
        )
    except AllocationError as e:
        raise ScenarioParseError(e.message, "scenario") from e
    logger.debug("Parsed scenario with %d users", scenario.num_users)
    return scenario


def load_scenario(path: Path) -> Scenario:
    """Read and parse a scenario file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"cannot read {path}: {e.strerror}"
        raise ScenarioParseError(msg, "config") from e
    return parse_scenario(text)
