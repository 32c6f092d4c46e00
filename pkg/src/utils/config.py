import copy
import logging
import os
from pathlib import Path

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / 'config.yaml'


def load_config(path: str | os.PathLike | None = None) -> dict:
    """Load config.yaml and apply environment overrides.

    Environment (a .env file is honoured):
        PARTITIONS_CONFIG: alternative YAML path
        PARTITIONS_DIGITS: working precision
        PARTITIONS_LOG_DIR: log directory
    """
    load_dotenv()

    path = path or os.getenv('PARTITIONS_CONFIG') or DEFAULT_CONFIG_PATH
    with open(path, 'r') as f:
        config = yaml.safe_load(f) or {}
    config = copy.deepcopy(config)

    digits = os.getenv('PARTITIONS_DIGITS')
    if digits:
        config.setdefault('precision', {})['digits'] = int(digits)

    log_dir = os.getenv('PARTITIONS_LOG_DIR')
    if log_dir:
        config.setdefault('logging', {})['directory'] = log_dir

    logger.debug(f"Loaded config from {path}")
    return config
