import datetime
import math
from collections.abc import Iterable

import pytz


def current_time() -> datetime.datetime:
    """
    Returns the current time in UTC as a timezone-aware datetime object.
    """
    current_time: datetime.datetime = datetime.datetime.now(pytz.utc)
    return current_time


def format_float(value: float) -> str:
    """17 significant digits, locale independent."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(float(value), ".17g")


def format_row(values: Iterable[float | int | str]) -> list[str]:
    row: list[str] = []
    for value in values:
        if isinstance(value, (int, str)):
            row.append(str(value))
        else:
            row.append(format_float(value))
    return row


def slug(value: float) -> str:
    """Filename-safe rendering of a sweep value, e.g. 0.001 -> '0.001', 20.0 -> '20'."""
    text: str = format(value, "f").rstrip("0").rstrip(".")
    if text in ("", "0", "-0") and value != 0:
        text = format(value, "g")
    return text.replace("-", "m") or "0"
