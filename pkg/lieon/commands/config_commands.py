"""
Configuration command mappings for lieon

This module provides commands for managing the lieon.config.json file.
Example: 'lieon config get clusters.max_n'
"""

import json

from lieon.utils.config import (coerce_value, get_config_file,
                                get_config_value, load_config, reset_config,
                                set_config_value)


def _get(key):
    value = get_config_value(key)
    if value is None:
        return False, f"Config value '{key}' not found"
    return True, json.dumps(value, indent=2)


def _set(key_value):
    if "=" not in key_value:
        return False, "Format should be 'key=value'"
    key, value = key_value.split("=", 1)
    if not key:
        return False, "Format should be 'key=value'"
    if not set_config_value(key, coerce_value(value)):
        return False, f"Failed to set '{key}'"
    return True, f"{key} = {coerce_value(value)!r}"


COMMANDS = {
    "config show": lambda: (True, json.dumps(load_config(), indent=2)),
    "config list": lambda: (True, json.dumps(load_config(), indent=2)),
    "config path": lambda: (True, get_config_file()),
    "config get": _get,
    "config set": _set,
    "config reset": lambda: (True, "Configuration reset to defaults") if reset_config()
    else (False, "Failed to reset configuration"),
}


def execute_config_command(command, args=None):
    """Run a config command; returns (ok, message)."""
    if command not in COMMANDS:
        return False, f"Unknown config command: {command}. Available: {', '.join(COMMANDS)}"
    try:
        return COMMANDS[command](args) if args else COMMANDS[command]()
    except TypeError:
        return False, f"'{command}' {'takes no argument' if args else 'needs an argument'}"
