import json
import logging
import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import click
import yaml

from treecode.barcode import StrictBarcode
from treecode.config import TreecodeConfig, load_config
from treecode.formats import open_input, read_barcode
from treecode.permkit import Permutation
from treecode.stats.sampling import BarcodeSampler, SamplerScheme
from treecode.utils import CliContext

logger = logging.getLogger(__name__)

DATA_ERRORS = (ValueError, OSError)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: bool):
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
    )
    logging.getLogger("treecode").setLevel(logging.DEBUG if verbose else logging.WARNING)


def error_payload(error: Exception) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": type(error).__name__, "message": str(error)}
    for attribute in ("code", "field", "line", "column", "position", "node"):
        if (value := getattr(error, attribute, None)) is not None:
            payload[attribute] = value
    return payload


def reports_errors(func: Callable) -> Callable:
    """
    Turns data errors raised by a command into a JSON object on stderr and exit code 1.
    Usage errors are left to click, which exits with 2.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DATA_ERRORS as e:
            logger.debug("Command failed", exc_info=True)
            click.echo(json.dumps(error_payload(e)), err=True)
            raise click.exceptions.Exit(1)

    return wrapper


def get_config(ctx: CliContext) -> TreecodeConfig:
    if ctx.config is None:
        ctx.config = load_config(ctx.config_path, ctx.overrides)
    return ctx.config


def parse_overrides(
    ctx: click.Context, param: click.Parameter, value: Sequence[str]
) -> Tuple[Tuple[str, Any], ...]:
    """``KEY=VALUE`` pairs, values read as YAML scalars so numbers keep their type."""
    overrides = []
    for item in value:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise click.BadParameter(f"Expected KEY=VALUE, got {item!r}", param=param)
        try:
            overrides.append((key.strip(), yaml.safe_load(raw)))
        except yaml.YAMLError as e:
            raise click.BadParameter(f"Cannot read the value of {key.strip()!r}: {e}", param=param)
    return tuple(overrides)


def parse_permutation(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    try:
        return Permutation.parse(value)
    except ValueError as e:
        raise click.BadParameter(str(e), param=param)


def resolve_barcode_or_permutation(
    perm: Optional[Permutation], input_path: Optional[str]
) -> Any:
    """Exactly one of ``--perm`` and ``--in`` must be given; returns the permutation or the barcode."""
    if (perm is None) == (input_path is None):
        raise click.UsageError("Specify exactly one of --perm and --in")
    if perm is not None:
        return perm
    with open_input(input_path) as stream:
        return read_barcode(stream)


def is_barcode(value: Any) -> bool:
    return isinstance(value, StrictBarcode)


def build_sampler(
    ctx: CliContext,
    scheme: str,
    seed: Optional[int],
    chunk_size: Optional[int],
    **intervals: Optional[float],
) -> BarcodeSampler:
    config = get_config(ctx).sampling
    sampler = BarcodeSampler.from_config(
        config,
        SamplerScheme(scheme),
        seed=seed,
        chunk_size=chunk_size,
        **intervals,
    )
    logger.debug("Using sampler %s", sampler.json())
    return sampler


def exactly_one(**options: Any) -> str:
    given = [name for name, value in options.items() if value is not None and value is not False]
    if len(given) != 1:
        names = ", ".join("--" + name.replace("_", "-") for name in options)
        raise click.UsageError(f"Specify exactly one of {names}")
    return given[0]
