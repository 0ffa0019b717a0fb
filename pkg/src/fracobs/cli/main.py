import os
import argparse

import yaml
from dotenv import load_dotenv

from ..config import ConfigLoader, parse_run_config
from ..errors import ConfigError
from ..logging import get_live_logger
from .commands import EXIT_INVALID, run


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracobs",
        description="Obstacle problems for the fractional Laplacian on intervals",
    )
    parser.add_argument("--config", type=str, required=True, help="YAML run file")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument("--threads", type=int, default=None, help="Assembly worker threads")
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomized checks")
    parser.add_argument("--config-dir", type=str, default=None, help="Directory searched for run files")
    parser.add_argument("--log-level", type=str, default=None, help="DEBUG, INFO, ... ERROR")
    return parser


def main(argv=None):
    load_dotenv()
    args = build_parser().parse_args(argv)
    logger = get_live_logger()

    level = args.log_level or os.environ.get("FRACOBS_LOG_LEVEL")
    if level:
        try:
            logger.set_level(level)
        except KeyError:
            logger.warning(f"Unknown log level '{level}', keeping {logger.min_level.name}")

    try:
        raw = ConfigLoader(args.config_dir).load_run(args.config)
    except FileNotFoundError as exc:
        logger.error(str(exc))
        return EXIT_INVALID
    except yaml.YAMLError as exc:
        logger.error(f"Cannot parse {args.config}: {exc}")
        return EXIT_INVALID

    env_output = os.environ.get("FRACOBS_OUTPUT_DIR")
    if env_output and isinstance(raw, dict) and "output_dir" not in raw:
        raw = {**raw, "output_dir": env_output}

    overrides = {"output_dir": args.out, "threads": args.threads, "seed": args.seed}
    try:
        config = parse_run_config(raw, overrides)
    except ConfigError as exc:
        logger.error(f"Invalid configuration field '{exc.field}': {exc.message}")
        return EXIT_INVALID

    return run(config)
