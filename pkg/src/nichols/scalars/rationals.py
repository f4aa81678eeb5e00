"""The rationals as a degenerate cyclotomic field (conductor 1 or 2).

Plain Fraction elements keep the hot linear-algebra paths fast; the class
carries the same adapter surface as CycloField and FiniteField so callers
never branch on the field kind.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            inst = super().__new__(cls)
            inst.conductor = 1
            inst.degree = 1
            inst.characteristic = 0
            inst.zero = Fraction(0)
            inst.one = Fraction(1)
            cls._instance = inst
        return cls._instance

    def from_int(self, n) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        # rational cyclotomic elements drop down transparently
        rational = getattr(x, "rational_value", None)
        if rational is not None:
            return rational()
        raise TypeError(f"cannot coerce {type(x).__name__} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        return "Q"


QQ = RationalField()
