# Standard Imports
import argparse
import logging
from logging import Logger
from pathlib import Path
from typing import Any

# Third Party Imports
from pydantic import ValidationError

# My Imports
from .config import ConfigSettings
from .exceptions import ChaosMMError, ConfigError
from .models import RunConfig
from .routes import CommandResult, RunContext, command_router
from .store import write_metadata


# ---------------Logging---------------#
logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)


# ---------------Parser---------------#
def build_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="chaos-mm",
        description="Chaos diagnostics for Hamiltonian market-maker models",
    )
    parser.add_argument("command", choices=command_router.names)
    parser.add_argument("--config", required=True, type=Path, help="JSON run config")
    parser.add_argument("--out", type=Path, default=None, help="output directory override")
    parser.add_argument("--workers", type=int, default=None, help="parallel paths (default 1)")
    parser.add_argument("--svg", action="store_true", help="also write SVG scatter plots")
    return parser


# ---------------Config---------------#
def describe_validation_error(error: ValidationError) -> str:
    messages: list[str] = []
    for item in error.errors():
        field: str = ".".join(str(part) for part in item["loc"]) or "config"
        messages.append(f"{field}: {item['msg']}")
    return "; ".join(messages)


def load_config(path: Path) -> RunConfig:
    try:
        text: str = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"config: cannot read {path} ({e.strerror})") from e
    try:
        return RunConfig.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(describe_validation_error(e)) from e


def apply_seed_override(config: RunConfig, seed: int | None) -> RunConfig:
    """CHAOS_MM_SEED replaces the experiment's master_seed, revalidated like the file was."""
    if seed is None or "master_seed" not in type(config.experiment).model_fields:
        return config
    document: dict[str, Any] = config.model_dump(mode="json")
    document["experiment"]["master_seed"] = seed
    try:
        return RunConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"CHAOS_MM_SEED: {describe_validation_error(e)}") from e


def resolve_context(
    args: argparse.Namespace, config: RunConfig, settings: ConfigSettings
) -> RunContext:
    workers: int = args.workers if args.workers is not None else settings.CHAOS_MM_WORKERS
    if workers < 1:
        raise ConfigError(f"workers: must be at least 1, got {workers}")
    out_dir: Path = args.out if args.out is not None else Path(config.output.directory)
    return RunContext(out_dir=out_dir, workers=workers, svg=args.svg)


# ---------------Main---------------#
def run(args: argparse.Namespace, settings: ConfigSettings) -> int:
    config: RunConfig = apply_seed_override(load_config(args.config), settings.CHAOS_MM_SEED)
    if config.experiment.kind != args.command:
        raise ConfigError(
            f"experiment.kind: config describes `{config.experiment.kind}`, "
            f"command was `{args.command}`"
        )
    context: RunContext = resolve_context(args, config, settings)
    master_seed: int | None = getattr(config.experiment, "master_seed", None)
    logger.info(f"Running `{args.command}` into {context.out_dir} (seed {master_seed})")

    try:
        result: CommandResult = command_router.dispatch(args.command, config, context)
    except ChaosMMError as e:
        logger.error(f"`{args.command}` failed: {e.detail}")
        write_metadata(
            context.out_dir / "metadata.json",
            config,
            master_seed,
            "failed",
            {"error": e.detail, "error_type": type(e).__name__},
        )
        return e.exit_code

    details: dict[str, Any] = {**result.details, "files": result.files}
    write_metadata(context.out_dir / "metadata.json", config, master_seed, result.status, details)
    if result.status == "failed":
        logger.error(f"`{args.command}` produced no successful paths")
        return 3
    logger.info(f"`{args.command}` finished with status {result.status}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args: argparse.Namespace = build_parser().parse_args(argv)
    try:
        # Re-read so that environment changes between invocations are honoured
        settings: ConfigSettings = ConfigSettings()
        logging.getLogger().setLevel(settings.CHAOS_MM_LOG_LEVEL.upper())
    except (ValidationError, ValueError) as e:
        logger.error(f"environment: {e}")
        return ConfigError.exit_code
    try:
        return run(args, settings)
    except ChaosMMError as e:
        logger.error(e.detail)
        return e.exit_code
