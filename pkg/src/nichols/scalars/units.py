"""Multiplicative orders of roots of unity, in Q(zeta_N) and in F_{p^k}.

In Q(zeta_N) every root of unity has order dividing lcm(2, N), so order
detection is a finite check.  In a finite field every nonzero element is
a root of unity of order dividing p^k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclo import CycloElem, divisors
from .gf import FFElem


def order_of_unit(x) -> int | None:
    """Multiplicative order of x if it is a root of unity, else None.

    Raises ZeroDivisionError on zero input.
    """
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x == 0:
            raise ZeroDivisionError("order of zero")
        if x == 1:
            return 1
        if x == -1:
            return 2
        return None
    if isinstance(x, FFElem):
        if x.is_zero():
            raise ZeroDivisionError("order of zero")
        m = x.field.order - 1
        return _order_dividing(x, m, x.field.one)
    if isinstance(x, CycloElem):
        if x.is_zero():
            raise ZeroDivisionError("order of zero")
        n = x.field.conductor
        m = n if n % 2 == 0 else 2 * n
        if m == 0:
            m = 2
        one = x.field.one
        if x**m != one:
            return None
        return _order_dividing(x, m, one)
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _order_dividing(x, m: int, one) -> int:
    order = m
    for q in _prime_divisors(m):
        while order % q == 0 and x ** (order // q) == one:
            order //= q
    return order


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def order_in_field(field, a) -> int | None:
    """Multiplicative order through the field adapter (handles PrimeField ints)."""
    char = getattr(field, "characteristic", 0)
    if char == 0:
        return order_of_unit(a)
    if field.is_zero(a):
        raise ZeroDivisionError("order of zero")
    m = field.order - 1
    order = m
    for q in _prime_divisors(m):
        while order % q == 0 and field.eq(_field_pow(field, a, order // q), field.one):
            order //= q
    return order


def _field_pow(field, a, n: int):
    result = field.one
    base = a
    while n:
        if n & 1:
            result = field.mul(result, base)
        base = field.mul(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class OrderSplit:
    """ord(q) = m * p^l with gcd(m, p) = 1, plus the matching factorization
    q = zeta * remainder with ord(zeta) = m, ord(remainder) = p^l, both in q^Z."""

    m: int
    p_power: int
    zeta: object
    remainder: object


def unit_order_split(q, p: int) -> OrderSplit:
    order = order_of_unit(q)
    if order is None:
        raise ValueError("input is not a root of unity")
    p_power = 1
    m = order
    while m % p == 0:
        m //= p
        p_power *= p
    if m == 1:
        one = q ** 0
        return OrderSplit(1, p_power, one, q)
    # zeta = q^(u*v) with u = p^l and u*v = 1 mod m has order m,
    # and q * zeta^{-1} = q^{1-uv} has order p^l.
    u = p_power
    v = pow(u, -1, m)
    zeta = q ** (u * v)
    remainder = q ** (1 - u * v)
    return OrderSplit(m, p_power, zeta, remainder)
