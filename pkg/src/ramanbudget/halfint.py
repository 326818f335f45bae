"""Exact half-integer angular-momentum quantum numbers.

All J, L, S, I, F, m quantum numbers in this package are stored as twice
their value so half-integers stay exact. Arithmetic that would leave the
half-integer lattice raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A number of the form n/2 with integer n, stored as ``twice_value``."""

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int):
            raise TypeError(f"twice_value must be int, got {self.twice_value!r}")

    @classmethod
    def of(cls, x) -> "HalfInt":
        """Coerce an int, Fraction, exact float (k/2) or HalfInt."""
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        if isinstance(x, Fraction):
            if x.denominator not in (1, 2):
                raise ValueError(f"{x} is not a half-integer")
            return cls(int(2 * x))
        if isinstance(x, float):
            twice = 2 * x
            if twice != int(twice):
                raise ValueError(f"{x} is not a half-integer")
            return cls(int(twice))
        raise TypeError(f"cannot interpret {x!r} as a half-integer")

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __float__(self) -> float:
        return self.twice_value / 2.0

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice_value // 2

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice_value + HalfInt.of(other).twice_value)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice_value - HalfInt.of(other).twice_value)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice_value - self.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice_value))

    def __eq__(self, other) -> bool:
        try:
            return self.twice_value == HalfInt.of(other).twice_value
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.twice_value < HalfInt.of(other).twice_value

    def __hash__(self):
        return hash((HalfInt, self.twice_value))

    def __repr__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def half(x) -> HalfInt:
    """Shorthand coercion, ``half(2.5) == HalfInt(5)``."""
    return HalfInt.of(x)


def projection_range(j: HalfInt):
    """All m with |m| <= j and m = j (mod 1), descending."""
    return [HalfInt(t) for t in range(j.twice_value, -j.twice_value - 1, -2)]


def triangle_range(j1: HalfInt, j2: HalfInt):
    """All j3 coupling to (j1, j2), ascending."""
    lo = abs(j1.twice_value - j2.twice_value)
    hi = j1.twice_value + j2.twice_value
    return [HalfInt(t) for t in range(lo, hi + 1, 2)]
