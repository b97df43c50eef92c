"""
Configuration utility for lieon.

This module handles loading, saving, and accessing the lieon.config.json file
that stores output, logging and enumeration settings.
"""

import json
import logging
import os
from datetime import datetime

logger = logging.getLogger("lieon-config")

CONFIG_DIR_ENV = "LIEON_CONFIG_DIR"
CONFIG_NAME = "lieon.config.json"


def get_config_dir():
    """Directory holding the config file; LIEON_CONFIG_DIR overrides ~/.lieon-cli."""
    return os.environ.get(CONFIG_DIR_ENV) or os.path.join(os.path.expanduser("~"), ".lieon-cli")


def get_config_file():
    return os.path.join(get_config_dir(), CONFIG_NAME)


def generate_default_config():
    """Generate the default configuration."""
    return {
        "version": "1.0.0",
        "created_at": "",  # set when saved
        "output": {
            "format": "json",
            "indent": 2,
        },
        "clusters": {
            "max_n": 6,
        },
        "logging": {
            "level": "WARNING",
        },
    }


def load_config():
    """
    Load the lieon.config.json file.
    If the file doesn't exist, create a default one.
    """
    path = get_config_file()
    try:
        if not os.path.exists(path):
            logger.info(f"Config file not found at {path}, creating default...")
            save_config(generate_default_config())

        with open(path, 'r') as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        logger.error(f"Error loading config: {str(e)}")
        default_config = generate_default_config()
        save_config(default_config)
        return default_config


def save_config(config):
    """Save the configuration to lieon.config.json."""
    path = get_config_file()
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)

        if not config.get("created_at"):
            config["created_at"] = datetime.now().isoformat()

        with open(path, 'w') as f:
            json.dump(config, f, indent=2)

        logger.info(f"Config saved to {path}")
        return True
    except OSError as e:
        logger.error(f"Error saving config: {str(e)}")
        return False


def reset_config():
    return save_config(generate_default_config())


def get_config_value(key_path, default=None):
    """
    Get a value from the config using a dot-separated path.
    Example: get_config_value("clusters.max_n")
    """
    current = load_config()
    try:
        for key in key_path.split('.'):
            current = current[key]
        return current
    except (KeyError, TypeError):
        return default


def coerce_value(text):
    """Integer-looking strings become ints; everything else stays a string."""
    try:
        return int(text)
    except (TypeError, ValueError):
        return text


def set_config_value(key_path, value):
    """
    Set a value in the config using a dot-separated path.
    Example: set_config_value("output.format", "dot")
    """
    config = load_config()
    keys = key_path.split('.')

    current = config
    for key in keys[:-1]:
        if not isinstance(current.get(key), dict):
            current[key] = {}
        current = current[key]

    current[keys[-1]] = value
    return save_config(config)
