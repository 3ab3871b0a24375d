# Standard Imports
import csv
import json
import logging
import math
from collections.abc import Iterable, Sequence
from logging import Logger
from pathlib import Path
from typing import Any

# Third Party Imports
import numpy as np
from jinja2 import Template

# My Imports
from .config import ARTIFACT_VERSION, templates
from .models import RunConfig
from .utils import current_time, format_row

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

SVG_SIZE: int = 1000
SVG_MARGIN: int = 80


# ------------------CSV-------------------#
def write_csv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[float | int | str]]
) -> Path:
    """Header plus rows, 17 significant digits, LF line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count: int = 0
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(format_row(row))
            count += 1
    logger.info(f"Wrote {count} rows to {path}")
    return path


# ------------------Metadata-------------------#
def write_metadata(
    path: Path,
    config: RunConfig,
    master_seed: int | None,
    status: str,
    details: dict[str, Any],
) -> Path:
    """Resolved config, seed, version and run outcome as JSON."""
    document: dict[str, Any] = {
        "artifact_version": ARTIFACT_VERSION,
        "created_at": current_time().isoformat(),
        "master_seed": master_seed,
        "status": status,
        "config": config.model_dump(mode="json"),
        "details": details,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n", encoding="utf-8") as handle:
        json.dump(_json_safe(document), handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info(f"Wrote metadata to {path}")
    return path


def _json_safe(value: Any) -> Any:
    """Strict JSON: non-finite floats become strings, numpy scalars become Python ones."""
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


# ------------------SVG-------------------#
def _axis_range(values: np.ndarray) -> tuple[float, float]:
    if values.size == 0:
        return 0.0, 1.0
    low: float = float(values.min())
    high: float = float(values.max())
    if high == low:
        pad: float = max(abs(low), 1.0) * 0.5
        return low - pad, high + pad
    return low, high


def write_scatter_svg(
    path: Path,
    points: np.ndarray,
    x_label: str,
    y_label: str,
    title: str = "",
) -> Path:
    """
    1000x1000 scatter: one filled circle of radius 1 per point, axes annotated with the
    data ranges. Coordinates are rounded to fixed precision so the file is reproducible.
    """
    data: np.ndarray = np.asarray(points, dtype=float).reshape(-1, 2)
    data = data[np.all(np.isfinite(data), axis=1)]
    x_min, x_max = _axis_range(data[:, 0])
    y_min, y_max = _axis_range(data[:, 1])
    span: int = SVG_SIZE - 2 * SVG_MARGIN
    cx: np.ndarray = SVG_MARGIN + (data[:, 0] - x_min) / (x_max - x_min) * span
    cy: np.ndarray = SVG_MARGIN + (y_max - data[:, 1]) / (y_max - y_min) * span

    template: Template = templates.get_template("scatter.svg.j2")
    svg: str = template.render(
        size=SVG_SIZE,
        margin=SVG_MARGIN,
        span=span,
        points=[(f"{x:.3f}", f"{y:.3f}") for x, y in zip(cx, cy)],
        x_min=f"{x_min:.6g}",
        x_max=f"{x_max:.6g}",
        y_min=f"{y_min:.6g}",
        y_max=f"{y_max:.6g}",
        x_label=x_label,
        y_label=y_label,
        title=title,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg, encoding="utf-8", newline="\n")
    logger.info(f"Wrote {len(data)} points to {path}")
    return path
