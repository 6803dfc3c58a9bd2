"""Hybrid 2D chaotic map and plaintext-derived initialization.

The map couples a circle-map style angular update with the quadratic
coordinate of the Henon map, both driven by the same two coefficients:

    x' = (x + b + a*sin(2*pi*y)) mod 1
    y' = 1 - a*x^2 + y

Both components are computed from the incoming state (simultaneous update).
x always lands back in [0, 1); y is left unbounded.

All arithmetic is IEEE-754 binary64.  Key reproducibility across machines
additionally requires a correctly rounded libm sin; +, -, *, and mod are
correctly rounded everywhere.  The test suite pins reference orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInput

TWO_PI = 2.0 * math.pi

# Ranges that encryption keys are drawn from.  Analysis sweeps may step
# outside them (e.g. b down to 0); key validation may not.
A_MIN, A_MAX = 1.0, 4.0
B_MIN, B_MAX = 0.1, 4.0


@dataclass(frozen=True)
class MapParams:
    """Coefficients (a, b) of the map; the chromosome the optimizer evolves."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidInput("map parameters must be finite")


@dataclass(frozen=True)
class MapState:
    """One orbit point (x, y)."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInput("map state must be finite")


def validate_key_params(params: MapParams) -> None:
    """Reject parameters outside the key ranges [A_MIN, A_MAX] x [B_MIN, B_MAX]."""
    if not (A_MIN <= params.a <= A_MAX):
        raise InvalidInput(f"parameter a={params.a!r} outside [{A_MIN}, {A_MAX}]")
    if not (B_MIN <= params.b <= B_MAX):
        raise InvalidInput(f"parameter b={params.b!r} outside [{B_MIN}, {B_MAX}]")


def _step_xy(a: float, b: float, x: float, y: float) -> tuple[float, float]:
    xn = (x + b + a * math.sin(TWO_PI * y)) % 1.0
    if xn >= 1.0:  # float % 1.0 can round up to exactly 1.0 for tiny negatives
        xn = 0.0
    yn = 1.0 - a * x * x + y
    return xn, yn


def step(params: MapParams, state: MapState) -> MapState:
    """Advance the orbit by one iteration."""
    x, y = _step_xy(params.a, params.b, state.x, state.y)
    return MapState(x, y)


def derive_initial_state(plaintext: bytes | bytearray) -> MapState:
    """Initial orbit point from the plaintext byte values.

    x0 is the mean of the byte values divided by their sum (algebraically
    1/len(plaintext), so only the length reaches the orbit); y0 = 1 - x0.
    """
    if len(plaintext) == 0:
        raise InvalidInput("plaintext must be non-empty")
    total = sum(plaintext)
    if total == 0:
        raise InvalidInput("plaintext bytes sum to zero")
    x0 = (total / len(plaintext)) / total
    return MapState(x0, 1.0 - x0)


def generate_sequence(
    params: MapParams,
    initial: MapState,
    n: int,
    transient: int = 0,
) -> tuple[list[float], list[float]]:
    """Iterate the map from `initial`, discard `transient` points, then
    collect the next n.  Returns the x and y sequences, each of length n.
    """
    if n < 1:
        raise InvalidInput("sequence length must be >= 1")
    if transient < 0:
        raise InvalidInput("transient must be >= 0")
    a, b = params.a, params.b
    x, y = initial.x, initial.y
    for _ in range(transient):
        x, y = _step_xy(a, b, x, y)
    xs = [0.0] * n
    ys = [0.0] * n
    for i in range(n):
        x, y = _step_xy(a, b, x, y)
        xs[i] = x
        ys[i] = y
    return xs, ys
