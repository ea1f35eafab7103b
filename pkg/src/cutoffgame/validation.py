"""Input validation helpers.

Every amplitude and Cartan entry in this package is an exact rational: a
Python ``int`` when integral, otherwise a :class:`fractions.Fraction`.  Floats
are refused everywhere, since a rounded amplitude silently changes which
vertices may fire.
"""
from __future__ import annotations

import numbers
import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Configuration = Tuple[Rational, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


class FloatRejectedError(TypeError):
    """Raised when a floating-point value is offered where an exact rational is required."""


def as_rational(x) -> Rational:
    """Convert ``x`` to an exact rational.

    Accepts ints (including numpy integers), Fractions, sympy-style objects with
    integer ``p``/``q``, and strings ``"p"`` or ``"p/q"``.  Floats and decimal
    strings raise :class:`FloatRejectedError`.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not amplitudes")
    if isinstance(x, numbers.Integral):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if m is None:
            if re.search(r"[.eE]", x):
                raise FloatRejectedError(f"floating-point literal {x!r} rejected; use p/q")
            raise ValueError(f"malformed rational {x!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {x!r}")
        return as_rational(Fraction(num, den))
    if isinstance(x, numbers.Rational):
        return as_rational(Fraction(int(x.numerator), int(x.denominator)))
    if isinstance(x, numbers.Real):
        raise FloatRejectedError(f"floating-point value {x!r} rejected; use an exact rational")
    p, q = getattr(x, "p", None), getattr(x, "q", None)
    if isinstance(p, int) and isinstance(q, int):
        return as_rational(Fraction(p, q))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def as_configuration(values: Iterable, n: int | None = None) -> Configuration:
    """Convert ``values`` to a configuration tuple, checking its length against ``n``."""
    if isinstance(values, str):
        values = parse_rational_list(values)
    v = tuple(as_rational(x) for x in values)
    if n is not None and len(v) != n:
        raise ValueError(f"configuration has {len(v)} amplitudes, graph has {n} vertices")
    return v


def parse_rational_list(text: str) -> list[Rational]:
    """Parse ``"-1,0,1/2"`` (commas and/or whitespace) into rationals."""
    parts = [p for p in re.split(r"[,\s]+", text.strip().strip("()[]")) if p]
    return [as_rational(p) for p in parts]


def parse_box(text: str) -> tuple[int, int]:
    """Parse an integer box ``"lo..hi"``."""
    m = re.match(r"^\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*$", text)
    if m is None:
        raise ValueError(f"box must look like 'lo..hi', got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValueError(f"empty box {text!r}")
    return lo, hi


def check_configurations(X, n_features: int | None = None) -> list[Configuration]:
    """Validate a batch of configurations (rows of ``X``) for the estimator API.

    The sklearn ``check_array`` casts to float, so this helper is used instead;
    object arrays of ints/Fractions/strings are accepted, float dtypes are not.
    """
    dtype = getattr(X, "dtype", None)
    if dtype is not None and getattr(dtype, "kind", "O") in "fc":
        raise FloatRejectedError("float arrays are rejected; pass ints, Fractions or 'p/q' strings")
    rows = [as_configuration(row) for row in X]
    if not rows:
        raise ValueError("found an empty batch of configurations")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("configurations have inconsistent lengths")
    if n_features is not None and width != n_features:
        raise ValueError(f"X has {width} features, but the graph has {n_features} vertices")
    return rows


def format_rational(x: Rational) -> str:
    return str(x)


def format_configuration(v: Sequence[Rational]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
