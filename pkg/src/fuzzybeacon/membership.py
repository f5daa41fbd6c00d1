"""Piecewise-linear membership functions for fuzzy linguistic terms.

Three shapes are supported:

* ``Ramp(lo, hi)`` -- saturating ramp: 0 at or below ``lo``, rising linearly,
  1 at or above ``hi``.
* ``Triangle(a, b, c)`` -- 0 outside ``(a, c)``, peak 1 at ``b``. Degenerate
  edges (``a == b`` or ``b == c``) pin the peak at a universe boundary and
  give a one-sided shoulder.
* ``Trapezoid(a, b, c, d)`` -- 0 outside ``(a, d)``, flat top 1 on ``[b, c]``.
  ``c == d`` (or ``a == b``) similarly pins the plateau at a boundary.

Malformed threshold tuples are rejected at construction; evaluation never
raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


def _check_finite(name: str, values: tuple[float, ...]) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} thresholds must be finite, got {values}")


@dataclass(frozen=True, slots=True)
class Ramp:
    """Saturating ramp, rising from 0 at ``lo`` to 1 at ``hi``."""

    lo: float
    hi: float

    shape = "ramp"

    def __post_init__(self) -> None:
        _check_finite("ramp", (self.lo, self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"ramp requires lo < hi, got ({self.lo}, {self.hi})")

    def evaluate(self, x: float) -> float:
        if x <= self.lo:
            return 0.0
        if x >= self.hi:
            return 1.0
        return (x - self.lo) / (self.hi - self.lo)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        out = np.clip((xs - self.lo) / (self.hi - self.lo), 0.0, 1.0)
        return out

    @property
    def peak(self) -> float:
        return self.hi

    @property
    def params(self) -> tuple[float, ...]:
        return (self.lo, self.hi)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.lo, self.hi)

    def support_bounds(self) -> tuple[float, float]:
        # Positive from lo (exclusive) onwards, saturated at 1 forever.
        return (self.lo, math.inf)


@dataclass(frozen=True, slots=True)
class Triangle:
    """Triangular membership with feet ``a``/``c`` and peak ``b``."""

    a: float
    b: float
    c: float

    shape = "tri"

    def __post_init__(self) -> None:
        _check_finite("triangle", (self.a, self.b, self.c))
        if not (self.a <= self.b <= self.c and self.a < self.c):
            raise ValueError(
                f"triangle requires a <= b <= c with a < c, got ({self.a}, {self.b}, {self.c})"
            )

    def evaluate(self, x: float) -> float:
        if x < self.a or x > self.c:
            return 0.0
        if x == self.b:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        if x > self.b:
            return (self.c - x) / (self.c - self.b)
        return 0.0

    def sample(self, xs: np.ndarray) -> np.ndarray:
        out = np.zeros_like(xs, dtype=float)
        if self.b > self.a:
            m = (xs > self.a) & (xs < self.b)
            out[m] = (xs[m] - self.a) / (self.b - self.a)
        if self.c > self.b:
            m = (xs > self.b) & (xs < self.c)
            out[m] = (self.c - xs[m]) / (self.c - self.b)
        out[xs == self.b] = 1.0
        return out

    @property
    def peak(self) -> float:
        return self.b

    @property
    def params(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c)

    def support_bounds(self) -> tuple[float, float]:
        return (self.a, self.c)


@dataclass(frozen=True, slots=True)
class Trapezoid:
    """Trapezoidal membership with feet ``a``/``d`` and plateau ``[b, c]``."""

    a: float
    b: float
    c: float
    d: float

    shape = "trap"

    def __post_init__(self) -> None:
        _check_finite("trapezoid", (self.a, self.b, self.c, self.d))
        if not (self.a <= self.b <= self.c <= self.d and self.a < self.d):
            raise ValueError(
                "trapezoid requires a <= b <= c <= d with a < d, got "
                f"({self.a}, {self.b}, {self.c}, {self.d})"
            )

    def evaluate(self, x: float) -> float:
        if x < self.a or x > self.d:
            return 0.0
        if self.b <= x <= self.c:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.d - x) / (self.d - self.c)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        out = np.zeros_like(xs, dtype=float)
        out[(xs >= self.b) & (xs <= self.c)] = 1.0
        if self.b > self.a:
            m = (xs > self.a) & (xs < self.b)
            out[m] = (xs[m] - self.a) / (self.b - self.a)
        if self.d > self.c:
            m = (xs > self.c) & (xs < self.d)
            out[m] = (self.d - xs[m]) / (self.d - self.c)
        return out

    @property
    def peak(self) -> float:
        # Plateau midpoint, so the "peak" is a single representative point.
        return (self.b + self.c) / 2.0

    @property
    def params(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d)

    def breakpoints(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d)

    def support_bounds(self) -> tuple[float, float]:
        return (self.a, self.d)


MembershipFunction = Union[Ramp, Triangle, Trapezoid]

_SHAPES = {"ramp": Ramp, "tri": Triangle, "trap": Trapezoid}


def make_mf(shape: str, params: tuple[float, ...]) -> MembershipFunction:
    """Build a membership function from a shape keyword and threshold tuple."""
    try:
        cls = _SHAPES[shape]
    except KeyError:
        raise ValueError(f"unknown membership shape {shape!r}") from None
    expected = {"ramp": 2, "tri": 3, "trap": 4}[shape]
    if len(params) != expected:
        raise ValueError(f"shape {shape!r} takes {expected} thresholds, got {len(params)}")
    return cls(*params)
