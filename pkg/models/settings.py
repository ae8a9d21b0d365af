"""
Toolkit configuration loaded from config/toolkit.yaml
"""
import os
import logging
from typing import Dict, Optional

import yaml

logger = logging.getLogger(__name__)

CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config', 'toolkit.yaml'
)


def load_settings(config_path: Optional[str] = None) -> Dict:
    """Read a settings file (the packaged one by default)"""
    path = config_path or CONFIG_PATH
    with open(path, 'r') as f:
        config = yaml.safe_load(f) or {}
    logger.debug(f"Loaded settings from {path}")
    return config


# Global settings instance
_settings = None


def get_settings(config_path: Optional[str] = None) -> Dict:
    """Get the cached packaged settings, or read an explicit file"""
    global _settings
    if config_path is not None and config_path != CONFIG_PATH:
        return load_settings(config_path)
    if _settings is None:
        _settings = load_settings()
    return _settings


def max_ground_set(config_path: Optional[str] = None) -> int:
    return int(get_settings(config_path)['limits']['max_ground_set'])
