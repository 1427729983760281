"""Coefficient rings: the integers, the rationals and the field with two elements."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction


class RingTag(str, Enum):
    Z = "Z"
    Q = "Q"
    F2 = "F2"

    @classmethod
    def parse(cls, value) -> "RingTag":
        if isinstance(value, RingTag):
            return value
        aliases = {"z": cls.Z, "integers": cls.Z, "q": cls.Q, "rationals": cls.Q,
                   "f2": cls.F2, "z2": cls.F2, "integers-mod-2": cls.F2}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown ring {value!r}") from None

    @property
    def is_field(self) -> bool:
        return self is not RingTag.Z

    @property
    def two_invertible(self) -> bool:
        return self is RingTag.Q


def normalize(ring: RingTag, x):
    """Reduce a coefficient into canonical form for the ring (0 means absent)."""
    if ring is RingTag.F2:
        return int(x) & 1
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def is_unit(ring: RingTag, x) -> bool:
    if ring is RingTag.Z:
        return x == 1 or x == -1
    return x != 0


def inverse(ring: RingTag, x):
    if ring is RingTag.F2:
        return 1
    if x == 1 or x == -1:
        return int(x)
    if ring is RingTag.Z:
        raise ZeroDivisionError(f"{x} is not a unit in Z")
    return Fraction(1) / x
