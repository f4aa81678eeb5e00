"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coefficient vectors of length deg Phi_N over the rationals,
always kept fully reduced modulo the N-th cyclotomic polynomial Phi_N.
Equality is coefficient-wise, so it is decidable and hashable.  For
N <= 2 the field degenerates to Q; callers who only need rationals
should use RationalField from the same package.

All values are immutable; everything here is safe to share between
threads without synchronization.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_floordiv_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (num = q * den), low-to-high."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dden)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        f = c // lead
        q[i - dden] = f
        for j, dj in enumerate(den):
            num[i - dden + j] -= f * dj
    assert all(c == 0 for c in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low-to-high, monic with integer entries."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            poly = _poly_floordiv_int(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CycloElem:
    """An element of Q(zeta_N), reduced mod Phi_N."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: "CycloField", coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def __add__(self, other):
        other = self.field.coerce(other)
        return CycloElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self.field.coerce(other)
        return CycloElem(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self.field.coerce(other)
        return CycloElem(self.field, self.field._mul(self.coeffs, other.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycloElem":
        return self.field.inverse(self)

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.field.conductor == other.field.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.conductor, self.coeffs))
        return self._hash

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """Membership in Z[zeta_N] (all coordinates integral)."""
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        return f"CycloElem({self.field.conductor}, {format_cyclo(self)})"


def format_cyclo(x: CycloElem) -> str:
    n = x.field.conductor
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}z{n}" if k == 1 else f"{mag}z{n}^{k}"
            parts.append(term if c > 0 else "-" + term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += "+" + p if not p.startswith("-") else p
    return out


class CycloField:
    """The cyclotomic field Q(zeta_N) with exact Fraction coefficients."""

    _instances: dict[int, "CycloField"] = {}

    def __new__(cls, conductor: int):
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        inst = cls._instances.get(conductor)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(conductor)
            cls._instances[conductor] = inst
        return inst

    def _init(self, conductor: int):
        self.conductor = conductor
        self.modulus = cyclotomic_polynomial(conductor)
        self.degree = len(self.modulus) - 1
        self.characteristic = 0
        self.zero = CycloElem(self, (Fraction(0),) * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = CycloElem(self, tuple(one))

    # -- element construction ------------------------------------------------

    def from_int(self, n) -> CycloElem:
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(n)
        return CycloElem(self, tuple(c))

    def from_coeffs(self, coeffs) -> CycloElem:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) >= self.degree + 1:
            coeffs = self._reduce(coeffs)
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return CycloElem(self, tuple(coeffs[: self.degree]))

    def zeta(self, k: int = 1) -> CycloElem:
        """zeta_N^k, fully reduced."""
        k %= self.conductor
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return self.from_coeffs(c)

    def coerce(self, x) -> CycloElem:
        if isinstance(x, CycloElem):
            if x.field is self:
                return x
            if self.conductor % x.field.conductor == 0:
                return embed(x, self)
            raise ValueError(
                f"cannot coerce from conductor {x.field.conductor} into {self.conductor}"
            )
        if isinstance(x, (int, Fraction)):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(zeta_{self.conductor})")

    # -- arithmetic kernels --------------------------------------------------

    def _reduce(self, coeffs: list[Fraction]) -> list[Fraction]:
        mod = self.modulus
        deg = self.degree
        for i in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(deg + 1):
                    coeffs[i - deg + j] -= c * mod[j]
        return coeffs[:deg]

    def _mul(self, a: tuple, b: tuple) -> tuple:
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        out = self._reduce(out)
        return tuple(out)

    def inverse(self, x: CycloElem) -> CycloElem:
        """Extended Euclid in Q[t] against Phi_N."""
        if x.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if x.is_rational():
            inv = [Fraction(0)] * self.degree
            inv[0] = 1 / x.coeffs[0]
            return CycloElem(self, tuple(inv))
        def strip(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        r0 = strip([Fraction(c) for c in self.modulus])
        r1 = strip(list(x.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        # Phi_N is irreducible over Q, so the gcd with any nonzero reduced
        # element is a nonzero constant and the loop terminates there.
        while len(r1) > 1:
            q, r = _poly_divmod_frac(r0, r1)
            s = _poly_sub_frac(s0, _poly_mul_frac(q, s1))
            r0, s0 = r1, s1
            r1, s1 = strip(r), s
        if not r1 or r1[0] == 0:
            raise ZeroDivisionError("modulus not coprime to element")
        c = r1[0]
        inv = [si / c for si in s1]
        return self.from_coeffs(inv)

    # -- field-adapter interface (shared with the finite fields) --------------

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return self.inverse(a)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        return f"CycloField({self.conductor})"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    dd = len(den) - 1
    lead = den[-1]
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            f = c / lead
            q[i - dd] = f
            for j, dj in enumerate(den):
                num[i - dd + j] -= f * dj
    return q, num[:dd] if dd > 0 else [Fraction(0)]


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub_frac(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def embed(x: CycloElem, target: CycloField) -> CycloElem:
    """Embed Q(zeta_M) into Q(zeta_N) for M | N via zeta_M -> zeta_N^{N/M}."""
    m = x.field.conductor
    n = target.conductor
    if n % m != 0:
        raise ValueError(f"no canonical embedding of conductor {m} into {n}")
    step = n // m
    out = target.zero
    for k, c in enumerate(x.coeffs):
        if c:
            out = out + target.zeta(step * k) * c
    return out


def root_of_unity(conductor: int, k: int = 1) -> CycloElem:
    """zeta_N^k as an element of Q(zeta_N); its order is N/gcd(N,k)."""
    if conductor < 1:
        raise ValueError("conductor must be >= 1")
    return CycloField(conductor).zeta(k)
