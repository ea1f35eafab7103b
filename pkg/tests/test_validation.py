from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest

from cutoffgame.validation import (
    FloatRejectedError,
    as_configuration,
    as_rational,
    check_configurations,
    parse_box,
    parse_rational_list,
)


@pytest.mark.parametrize(
    "raw, want",
    [(3, 3), ("-1/2", F(-1, 2)), ("4/2", 2), (F(6, 3), 2), (np.int64(-5), -5), (" 7 ", 7), ("+1/3", F(1, 3))],
)
def test_as_rational_accepts_exact_values(raw, want):
    got = as_rational(raw)
    assert got == want
    assert type(got) is type(want)


@pytest.mark.parametrize("raw", [0.5, 1.0, "0.5", "1e3", np.float64(2.0)])
def test_floats_rejected(raw):
    with pytest.raises(FloatRejectedError):
        as_rational(raw)


@pytest.mark.parametrize("raw", [True, "x", "1/0", None])
def test_malformed_rejected(raw):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        as_rational(raw)


def test_sympy_rationals_accepted():
    sympy = pytest.importorskip("sympy")
    assert as_rational(sympy.Rational(-3, 4)) == F(-3, 4)


def test_parse_rational_list_and_configuration():
    assert parse_rational_list("-1, 0 ,1/2") == [-1, 0, F(1, 2)]
    assert parse_rational_list("(1 -2 3)") == [1, -2, 3]
    assert as_configuration("-1,0", 2) == (-1, 0)
    with pytest.raises(ValueError, match="2 vertices"):
        as_configuration([1, 2, 3], 2)


def test_parse_box():
    assert parse_box("-2..2") == (-2, 2)
    for bad in ("2..-2", "1-2", "a..b"):
        with pytest.raises(ValueError):
            parse_box(bad)


def test_check_configurations():
    assert check_configurations([[1, "-1/2"], (0, 0)], 2) == [(1, F(-1, 2)), (0, 0)]
    assert check_configurations(np.array([[1, -1]]), 2) == [(1, -1)]
    with pytest.raises(FloatRejectedError):
        check_configurations(np.array([[1.0, 2.0]]))
    with pytest.raises(ValueError, match="inconsistent"):
        check_configurations([[1, 2], [1]])
    with pytest.raises(ValueError, match="empty"):
        check_configurations([])
    with pytest.raises(ValueError, match="features"):
        check_configurations([[1, 2]], 3)
