"""Speed and time unit conversions.

All fuel-model formulas take wind speed in ft/min and produce rates in
ft/min; scenario geometry runs in plane units per hour.  The supported
units are deliberately few: {ft/min, km/h, mph} for speed, {min, h} for
time.
"""

from .errors import InvalidInputError

# ft/min per one unit of each supported speed unit
_FTMIN_PER = {
    "ft/min": 1.0,
    "km/h": 54.6807,
    "mph": 88.0,
}

# hours per one unit of each supported time unit
_HOURS_PER = {
    "min": 1.0 / 60.0,
    "h": 1.0,
}

SPEED_UNITS = tuple(_FTMIN_PER)
TIME_UNITS = tuple(_HOURS_PER)


def convert_speed(value, src, dst):
    """Convert a speed between ft/min, km/h and mph."""
    try:
        f_src = _FTMIN_PER[src]
    except KeyError:
        raise InvalidInputError(
            f"unknown speed unit {src!r}; expected one of {sorted(_FTMIN_PER)}"
        ) from None
    try:
        f_dst = _FTMIN_PER[dst]
    except KeyError:
        raise InvalidInputError(
            f"unknown speed unit {dst!r}; expected one of {sorted(_FTMIN_PER)}"
        ) from None
    return value * (f_src / f_dst)


def convert_time(value, src, dst):
    """Convert a duration between minutes and hours."""
    try:
        f_src = _HOURS_PER[src]
    except KeyError:
        raise InvalidInputError(
            f"unknown time unit {src!r}; expected one of {sorted(_HOURS_PER)}"
        ) from None
    try:
        f_dst = _HOURS_PER[dst]
    except KeyError:
        raise InvalidInputError(
            f"unknown time unit {dst!r}; expected one of {sorted(_HOURS_PER)}"
        ) from None
    return value * (f_src / f_dst)
