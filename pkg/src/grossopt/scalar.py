"""Scalar realizations the solver can run on.

The solver does all of its arithmetic through Python operators (``+ - * / abs``
and the ordering), which both ``float`` and :class:`GrossNumber` provide.  The
few things operators cannot express live on a :class:`ScalarOps` object:
the constants, injection of an objective value and extraction of a machine
real from a purely finite result.

Division is restricted per realization: floats accept any nonzero divisor,
gross numbers accept only single-term divisors.
"""

from __future__ import annotations

import math
from numbers import Real
from typing import Protocol, Union

from .grossone import GrossError, GrossNumber, ONE, ZERO

__all__ = ["Scalar", "ScalarOps", "FloatOps", "GrossOps", "FLOAT", "GROSS", "ops_for"]

Scalar = Union[float, GrossNumber]


class ScalarOps(Protocol):
    name: str
    zero: Scalar
    one: Scalar

    def inject(self, r: float) -> Scalar: ...

    def to_real(self, x: Scalar) -> float: ...


class FloatOps:
    name = "float"
    zero = 0.0
    one = 1.0

    def inject(self, r: float) -> float:
        r = float(r)
        if not math.isfinite(r):
            raise ValueError(f"non-finite value {r!r} rejected")
        return r

    def to_real(self, x) -> float:
        return float(x)

    def __repr__(self):
        return "FLOAT"


class GrossOps:
    name = "gross"
    zero = ZERO
    one = ONE

    def inject(self, r: float) -> GrossNumber:
        if isinstance(r, GrossNumber):
            return r
        return GrossNumber.from_real(r)

    def to_real(self, x) -> float:
        if isinstance(x, GrossNumber):
            return x.to_real()
        if isinstance(x, Real):
            return float(x)
        raise GrossError(f"cannot extract a real from {x!r}")

    def __repr__(self):
        return "GROSS"


FLOAT = FloatOps()
GROSS = GrossOps()


def ops_for(*values) -> ScalarOps:
    """Gross realization if any value is a GrossNumber, float otherwise."""
    if any(isinstance(v, GrossNumber) for v in values):
        return GROSS
    return FLOAT
