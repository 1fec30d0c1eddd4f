"""Unit conversion helpers."""

import math

import pytest

from firefront.errors import InvalidInputError
from firefront.units import SPEED_UNITS, TIME_UNITS, convert_speed, convert_time


def test_kmh_to_ftmin_factor():
    # stored factor: 1 km/h = 54.6807 ft/min
    assert convert_speed(1.0, "km/h", "ft/min") == pytest.approx(54.6807, abs=0)
    assert convert_speed(7.0, "km/h", "ft/min") == pytest.approx(7 * 54.6807,
                                                                 rel=1e-15)


def test_mph_to_ftmin_factor():
    assert convert_speed(1.0, "mph", "ft/min") == 88.0
    assert convert_speed(5.0, "mph", "ft/min") == 440.0


def test_zero_converts_to_zero():
    for src in SPEED_UNITS:
        for dst in SPEED_UNITS:
            assert convert_speed(0.0, src, dst) == 0.0


def test_identity_conversion():
    assert convert_speed(3.7, "km/h", "km/h") == 3.7
    assert convert_time(2.5, "h", "h") == 2.5


def test_speed_round_trip():
    for src in SPEED_UNITS:
        for dst in SPEED_UNITS:
            back = convert_speed(convert_speed(12.34, src, dst), dst, src)
            assert back == pytest.approx(12.34, rel=1e-12)


def test_time_conversions():
    assert convert_time(90.0, "min", "h") == pytest.approx(1.5, rel=1e-15)
    assert convert_time(2.0, "h", "min") == pytest.approx(120.0, rel=1e-15)
    for src in TIME_UNITS:
        for dst in TIME_UNITS:
            back = convert_time(convert_time(7.7, src, dst), dst, src)
            assert back == pytest.approx(7.7, rel=1e-12)


def test_unknown_units_rejected():
    with pytest.raises(InvalidInputError):
        convert_speed(1.0, "m/s", "ft/min")
    with pytest.raises(InvalidInputError):
        convert_speed(1.0, "km/h", "furlong/fortnight")
    with pytest.raises(InvalidInputError):
        convert_time(1.0, "s", "h")


def test_conversion_is_linear():
    for value in (0.1, 1.0, 123.456):
        assert convert_speed(value, "km/h", "ft/min") == pytest.approx(
            value * convert_speed(1.0, "km/h", "ft/min"), rel=1e-15)
    assert not math.isnan(convert_speed(1e300, "mph", "ft/min"))
