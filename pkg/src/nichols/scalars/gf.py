"""Finite fields F_{p^k} as polynomial residues, with the factorization
machinery needed to split cyclotomic polynomials modulo a prime.

Polynomials over F_p are tuples of ints in [0, p), low degree first, with
no trailing zeros (the zero polynomial is the empty tuple).  Fields are
capped at p^k < 2^31; every case in scope is tiny.

Factorization is distinct-degree followed by Cantor-Zassenhaus splitting.
The splitting uses a PRNG seeded per input, and factor lists are sorted by
coefficient tuple, so results are bit-for-bit reproducible.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import gcd

Poly = tuple[int, ...]

FIELD_SIZE_CAP = 2**31


def _strip(p: list[int]) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def pol_add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _strip(out)


def pol_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _strip(out)


def pol_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _strip(out)


def pol_divmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = (c * inv_lead) % p
            q[i - db] = f
            for j, bj in enumerate(b):
                a[i - db + j] = (a[i - db + j] - f * bj) % p
    return _strip(q), _strip(a[:db])


def pol_mod(a: Poly, b: Poly, p: int) -> Poly:
    return pol_divmod(a, b, p)[1]


def pol_gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, pol_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def pol_pow_mod(base: Poly, e: int, mod: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = pol_mod(base, mod, p)
    while e:
        if e & 1:
            result = pol_mod(pol_mul(result, base, p), mod, p)
        base = pol_mod(pol_mul(base, base, p), mod, p)
        e >>= 1
    return result


def pol_monic(a: Poly, p: int) -> Poly:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], p - 2, p)
    return tuple((c * inv) % p for c in a)


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: x^{p^k} = x mod f and proper-power conditions."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x: Poly = (0, 1)
    for ell in sorted({q for q in _prime_factors(k)}):
        h = pol_sub(pol_pow_mod(x, p ** (k // ell), f, p), x, p)
        if pol_gcd(h, f, p) != (1,):
            return False
    return pol_sub(pol_pow_mod(x, p**k, f, p), x, p) == ()


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_part(f: Poly, p: int) -> Poly:
    """Product of the distinct irreducible factors of f (the radical)."""
    f = pol_monic(f, p)
    result: Poly = (1,)
    while len(f) > 1:
        deriv = _strip([(i * c) % p for i, c in enumerate(f)][1:])
        if deriv:
            g = pol_gcd(f, deriv, p)
            sqfree, _ = pol_divmod(f, g, p)
            result = pol_monic(pol_mul(result, _coprime_part(sqfree, result, p), p), p)
            f = g
        else:
            # f = h(x^p); its radical equals the radical of h
            f = tuple(f[i] for i in range(0, len(f), p))
    return result


def _coprime_part(a: Poly, b: Poly, p: int) -> Poly:
    g = pol_gcd(a, b, p)
    while len(g) > 1:
        a, _ = pol_divmod(a, g, p)
        g = pol_gcd(a, b, p)
    return a


def factor_squarefree(f: Poly, p: int) -> list[Poly]:
    """Irreducible factors of a squarefree monic f, sorted canonically."""
    f = pol_monic(f, p)
    factors: list[Poly] = []
    x: Poly = (0, 1)
    # distinct-degree stage
    stage: list[tuple[Poly, int]] = []
    h = x
    v = f
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = pol_pow_mod(h, p, f, p)
        g = pol_gcd(pol_sub(h, x, p), v, p)
        if len(g) > 1:
            stage.append((g, d))
            v, _ = pol_divmod(v, g, p)
    if len(v) > 1:
        stage.append((v, len(v) - 1))
    # equal-degree stage (Cantor-Zassenhaus); deterministic seeding
    for poly, d in stage:
        factors.extend(_equal_degree_split(poly, d, p))
    return sorted(factors)


def _equal_degree_split(f: Poly, d: int, p: int) -> list[Poly]:
    k = len(f) - 1
    if k == d:
        return [f]
    rng = random.Random(f"edf:{p}:{f}")
    q = p**d
    while True:
        a = tuple(rng.randrange(p) for _ in range(k))
        a = _strip(list(a))
        if len(a) <= 1:
            continue
        if p == 2:
            # characteristic 2: split with the trace map T(a) = sum a^{2^i}, i < d
            t = a
            cur = a
            for _ in range(d - 1):
                cur = pol_pow_mod(cur, 2, f, p)
                t = pol_add(t, cur, p)
            g = pol_gcd(t, f, p)
        else:
            b = pol_pow_mod(a, (q - 1) // 2, f, p)
            g = pol_gcd(pol_sub(b, (1,), p), f, p)
        if 1 < len(g) < len(f):
            rest, _ = pol_divmod(f, g, p)
            return _equal_degree_split(pol_monic(g, p), d, p) + _equal_degree_split(
                pol_monic(rest, p), d, p
            )


def distinct_irreducible_factors(f: Poly, p: int) -> list[Poly]:
    """All distinct monic irreducible factors of f over F_p, sorted."""
    rad = squarefree_part(f, p)
    if len(rad) <= 1:
        return []
    return factor_squarefree(rad, p)


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> Poly:
    """Smallest monic irreducible of degree k over F_p, in lex coefficient order."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        f = tuple(coeffs) + (1,)
        if is_irreducible(f, p):
            return f
    raise RuntimeError("unreachable: irreducible polynomials exist in every degree")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FFElem:
    """Element of F_{p^k}: residue tuple of length k (high zeros kept)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "FiniteField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self.field.coerce(other)
        p = self.field.p
        return FFElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

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

    def inverse(self):
        return self.field.inv(self)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"FFElem({self.field.p}^{self.field.k}, {self.coeffs})"


class FiniteField:
    """F_{p^k} = F_p[x]/(modulus); the default modulus is deterministic."""

    _instances: dict[tuple, "FiniteField"] = {}

    def __new__(cls, p: int, k: int = 1, modulus: Poly | None = None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be >= 1")
        if p**k >= FIELD_SIZE_CAP:
            raise ValueError(f"field size {p}^{k} exceeds the 2^31 cap")
        if modulus is None:
            modulus = default_modulus(p, k)
        else:
            modulus = pol_monic(tuple(c % p for c in modulus), p)
            if len(modulus) - 1 != k:
                raise ValueError("modulus degree does not match k")
            if not is_irreducible(modulus, p):
                raise ValueError("modulus is not irreducible")
        key = (p, k, modulus)
        inst = cls._instances.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(p, k, modulus)
            cls._instances[key] = inst
        return inst

    def _init(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self.characteristic = p
        self.zero = FFElem(self, (0,) * k)
        self.one = FFElem(self, (1,) + (0,) * (k - 1))
        self.gen = FFElem(self, ((0, 1) + (0,) * k)[:k]) if k > 1 else FFElem(self, (1,))

    def from_int(self, n: int) -> FFElem:
        return FFElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_coeffs(self, coeffs) -> FFElem:
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.k:
            coeffs = pol_mod(_strip(list(coeffs)), self.modulus, self.p)
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FFElem(self, coeffs[: self.k])

    def coerce(self, x) -> FFElem:
        if isinstance(x, FFElem):
            if x.field is self:
                return x
            raise ValueError("cannot mix elements of different finite fields")
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{self.p}^{self.k}")

    def elements(self):
        p, k = self.p, self.k
        for code in range(self.order):
            c = code
            coeffs = []
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            yield FFElem(self, tuple(coeffs))

    def _mul(self, a: FFElem, b: FFElem) -> FFElem:
        prod = pol_mul(_strip(list(a.coeffs)), _strip(list(b.coeffs)), self.p)
        red = pol_mod(prod, self.modulus, self.p)
        return FFElem(self, red + (0,) * (self.k - len(red)))

    # -- field-adapter interface ----------------------------------------------

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a: FFElem) -> FFElem:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return a ** (self.order - 2)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def eq(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"


class PrimeField:
    """F_p with plain int elements: the fast backend for linear algebra."""

    _instances: dict[int, "PrimeField"] = {}

    def __new__(cls, p: int):
        inst = cls._instances.get(p)
        if inst is None:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            inst = super().__new__(cls)
            inst.p = p
            inst.order = p
            inst.characteristic = p
            inst.zero = 0
            inst.one = 1 % p
            cls._instances[p] = inst
        return inst

    def from_int(self, n: int) -> int:
        return n % self.p

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, FFElem) and x.field.k == 1:
            return x.coeffs[0]
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def __repr__(self):
        return f"F_{self.p}"
