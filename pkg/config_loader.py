"""
Configuration loader for the wall gadget toolkit
"""
import copy
import json
import os
from typing import Any, Dict

DEFAULT_CONFIG_PATH = "configs/search.json"

DEFAULT_CONFIG: Dict[str, Any] = {
    "app": {"log_level": "INFO", "log_file": "logs/app.log"},
    "search": {"node_budget": 100_000_000, "witness_cap": None},
    "trials": {"exhaustive_limit": 1_000_000, "sample_count": 10_000, "seed": 20240601},
    "suite": {"max_r": 2, "workers": 1, "mixed_samples": 10_000},
}


def load_config(config_path: str = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    """
    Load configuration from JSON file with environment variable overrides

    Args:
        config_path: Path to the configuration file

    Returns:
        Configuration dictionary

    Raises:
        FileNotFoundError: If config file doesn't exist
        json.JSONDecodeError: If config file is invalid JSON
        ValueError: If a section or field is missing or out of range
    """
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            config = json.load(f)
    except FileNotFoundError:
        raise FileNotFoundError(f"Configuration file not found: {config_path}")
    except json.JSONDecodeError as e:
        raise e

    config = _override_with_env_vars(config)
    _validate_config(config)
    return config


def default_config() -> Dict[str, Any]:
    """Built-in configuration, with the same environment overrides applied."""
    config = _override_with_env_vars(copy.deepcopy(DEFAULT_CONFIG))
    _validate_config(config)
    return config


def _env_int(name: str) -> int:
    try:
        return int(os.environ[name])
    except ValueError:
        raise ValueError(f"{name} must be an integer")


def _override_with_env_vars(config: Dict[str, Any]) -> Dict[str, Any]:
    """Override config values with environment variables"""

    if "WALLGADGETS_LOG_LEVEL" in os.environ:
        config.setdefault("app", {})["log_level"] = os.environ["WALLGADGETS_LOG_LEVEL"].upper()

    if "WALLGADGETS_NODE_BUDGET" in os.environ:
        config.setdefault("search", {})["node_budget"] = _env_int("WALLGADGETS_NODE_BUDGET")

    if "WALLGADGETS_SEED" in os.environ:
        config.setdefault("trials", {})["seed"] = _env_int("WALLGADGETS_SEED")

    if "WALLGADGETS_EXHAUSTIVE_LIMIT" in os.environ:
        config.setdefault("trials", {})["exhaustive_limit"] = _env_int("WALLGADGETS_EXHAUSTIVE_LIMIT")

    if "WALLGADGETS_WORKERS" in os.environ:
        config.setdefault("suite", {})["workers"] = _env_int("WALLGADGETS_WORKERS")

    return config


def _validate_config(config: Dict[str, Any]) -> None:
    """Validate that required configuration fields are present"""

    required_fields = [
        ("app", "log_level"),
        ("search", "node_budget"),
        ("trials", "exhaustive_limit"),
        ("trials", "sample_count"),
        ("trials", "seed"),
        ("suite", "max_r"),
        ("suite", "workers"),
    ]

    for section, field in required_fields:
        if section not in config:
            raise ValueError(f"Missing required config section: {section}")

        if field not in config[section]:
            raise ValueError(f"Missing required config field: {section}.{field}")

    positive = [
        ("search", "node_budget"),
        ("trials", "exhaustive_limit"),
        ("trials", "sample_count"),
        ("suite", "max_r"),
        ("suite", "workers"),
    ]
    for section, field in positive:
        value = config[section][field]
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"{section}.{field} must be a positive integer, got {value!r}")

    cap = config["search"].get("witness_cap")
    if cap is not None and (not isinstance(cap, int) or cap < 1):
        raise ValueError(f"search.witness_cap must be null or a positive integer, got {cap!r}")


def get_app_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Get application-specific configuration"""
    return config.get("app", {})


def get_search_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Get search budget configuration"""
    return config.get("search", {})


def get_trial_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Get deletion-trial configuration"""
    return config.get("trials", {})


def get_suite_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Get lemma-suite configuration"""
    return config.get("suite", {})
