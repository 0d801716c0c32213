"""Exact dyadic rationals ``numerator / 2**log2_denominator``.

Every correlator of a hypergraph state is a dyadic rational, so this small
type lets the simulator and the closed-form lemmas be compared exactly.
Mixed arithmetic with :class:`fractions.Fraction` falls back to ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _normalize(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    tz = (num & -num).bit_length() - 1
    shift = min(tz, exp)
    return num >> shift, exp - shift


@dataclass(frozen=True, init=False, order=False)
class Dyadic:
    numerator: int
    log2_denominator: int

    def __init__(self, numerator: int = 0, log2_denominator: int = 0):
        if log2_denominator < 0:
            numerator <<= -log2_denominator
            log2_denominator = 0
        num, exp = _normalize(int(numerator), int(log2_denominator))
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "log2_denominator", exp)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> Dyadic:
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @property
    def denominator(self) -> int:
        return 1 << self.log2_denominator

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return math.ldexp(self.numerator, -self.log2_denominator)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    def __str__(self) -> str:
        if self.log2_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Rational):
                return self.to_fraction() + other
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        e = max(self.log2_denominator, o.log2_denominator)
        return Dyadic(
            (self.numerator << (e - self.log2_denominator))
            + (o.numerator << (e - o.log2_denominator)),
            e,
        )

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.log2_denominator)

    def __pos__(self) -> Dyadic:
        return self

    def __abs__(self) -> Dyadic:
        return Dyadic(abs(self.numerator), self.log2_denominator)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Rational):
                return self.to_fraction() * other
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        return Dyadic(self.numerator * o.numerator, self.log2_denominator + o.log2_denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int) and other > 0 and other & (other - 1) == 0:
            return Dyadic(self.numerator, self.log2_denominator + other.bit_length() - 1)
        if isinstance(other, Dyadic) and abs(other.numerator) == 1:
            return Dyadic(
                self.numerator * other.numerator,
                self.log2_denominator - other.log2_denominator,
            )
        if isinstance(other, (int, Rational, Dyadic)):
            other = other.to_fraction() if isinstance(other, Dyadic) else other
            return self.to_fraction() / other
        if isinstance(other, float):
            return float(self) / other
        return NotImplemented

    def scale2(self, power: int) -> Dyadic:
        """Multiply by ``2**power`` (``power`` may be negative)."""
        return Dyadic(self.numerator, self.log2_denominator - power)

    # comparison -----------------------------------------------------------

    def _key(self, other):
        if isinstance(other, Dyadic):
            return other.to_fraction()
        if isinstance(other, (int, Rational)):
            return Fraction(other)
        if isinstance(other, float):
            return other
        return None

    def __eq__(self, other) -> bool:
        k = self._key(other)
        if k is None:
            return NotImplemented
        if isinstance(k, float):
            return float(self) == k
        return self.to_fraction() == k

    def __lt__(self, other) -> bool:
        k = self._key(other)
        if k is None:
            return NotImplemented
        return (float(self) if isinstance(k, float) else self.to_fraction()) < k

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        k = self._key(other)
        if k is None:
            return NotImplemented
        return (float(self) if isinstance(k, float) else self.to_fraction()) > k

    def __ge__(self, other) -> bool:
        return self == other or self > other


ZERO = Dyadic(0)
ONE = Dyadic(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Dyadic):
        return value.to_fraction()
    return Fraction(value)
