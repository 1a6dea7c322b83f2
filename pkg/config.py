"""Run settings: defaults, environment overrides and JSON files."""

import json
import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from enumerator import SearchConfig

logger = logging.getLogger(__name__)

MAX_JOBS = 64

default_config: Dict[str, Any] = {
    "jobs": min(os.cpu_count() or 1, MAX_JOBS),  # Range: 1-64
    "prune_pair": True,  # Boolean
    "prune_closure": True,  # Boolean
    "max_solutions": None,  # None or >= 1
    "progress_every": 50000,  # Range: >= 1
    "output_dir": "zonotile_output",  # String
}

_ENV = {
    "jobs": "ZONOTILE_JOBS",
    "prune_pair": "ZONOTILE_PRUNE_PAIR",
    "prune_closure": "ZONOTILE_PRUNE_CLOSURE",
    "max_solutions": "ZONOTILE_MAX_SOLUTIONS",
    "progress_every": "ZONOTILE_PROGRESS_EVERY",
    "output_dir": "ZONOTILE_OUTPUT_DIR",
}


def _parse_flag(raw: str) -> bool:
    value = raw.strip().lower()
    if value in {"1", "true", "yes", "on"}:
        return True
    if value in {"0", "false", "no", "off"}:
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def _from_env() -> Dict[str, Any]:
    found: Dict[str, Any] = {}
    for key, var in _ENV.items():
        raw = os.getenv(var)
        if raw is None or not raw.strip():
            continue
        if key in {"prune_pair", "prune_closure"}:
            found[key] = _parse_flag(raw)
        elif key == "output_dir":
            found[key] = raw
        else:
            found[key] = int(raw)
    return found


def validate_config(config: Dict[str, Any]) -> None:
    jobs = config.get("jobs")
    if isinstance(jobs, bool) or not isinstance(jobs, int) or not 1 <= jobs <= MAX_JOBS:
        raise ValueError("jobs out of range")
    for key in ("prune_pair", "prune_closure"):
        if not isinstance(config.get(key), bool):
            raise ValueError(f"{key} must be boolean")
    cap = config.get("max_solutions")
    if cap is not None and (isinstance(cap, bool) or not isinstance(cap, int) or cap < 1):
        raise ValueError("max_solutions must be a positive integer or null")
    every = config.get("progress_every")
    if isinstance(every, bool) or not isinstance(every, int) or every < 1:
        raise ValueError("progress_every must be a positive integer")
    if not isinstance(config.get("output_dir"), str) or not config["output_dir"].strip():
        raise ValueError("output_dir must be a non-empty string")


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Defaults, then environment, then the JSON file at ``path``."""
    config = dict(default_config)
    config.update(_from_env())
    if path:
        with Path(path).expanduser().open("r", encoding="utf-8") as fh:
            data = json.load(fh)
        # saved files wrap the settings under "config"
        settings = data.get("config", data) if isinstance(data, dict) else None
        if not isinstance(settings, dict):
            raise ValueError("configuration file must hold a JSON object")
        unknown = set(settings) - set(default_config)
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        config.update(settings)
    validate_config(config)
    return config


def search_config_from(config: Dict[str, Any]) -> SearchConfig:
    validate_config(config)
    return SearchConfig(
        prune_pair_convex=config["prune_pair"],
        prune_closure=config["prune_closure"],
        max_solutions=config["max_solutions"],
        progress_every=config["progress_every"],
    )


def save_config(config: Dict[str, Any], path: str) -> bool:
    """Persist a validated configuration as JSON."""
    validate_config(config)
    data = {
        "created": datetime.now(timezone.utc).isoformat(),
        "config": config,
    }
    try:
        target = Path(path).expanduser()
        target.parent.mkdir(parents=True, exist_ok=True, mode=0o700)
        with target.open("w", encoding="utf-8") as fh:
            json.dump(data, fh, ensure_ascii=False, indent=2)
        return True
    except OSError as exc:
        logger.error("Failed to save configuration: %s", exc)
        return False
