from .loader import ConfigLoader
from .run_config import RunConfig, TABLE_ORDERS, load_run_config, parse_run_config

__all__ = [
    "ConfigLoader",
    "RunConfig",
    "TABLE_ORDERS",
    "load_run_config",
    "parse_run_config",
]
