"""Maximal ideals of Z[zeta_N] above a rational prime and the residue maps.

An ideal is recorded by the data (N, p, f) where f is a monic irreducible
factor of Phi_N mod p; the residue field is F_{p^{deg f}} and reduction
sends zeta_N to the class of x.  When p divides N the distinct factors of
Phi_N mod p coincide with those of Phi_{N'} mod p, N' the p-free part of N,
which is how they are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycloElem, CycloField, cyclotomic_polynomial
from .gf import (
    FFElem,
    FiniteField,
    Poly,
    distinct_irreducible_factors,
    pol_mod,
    _strip,
)


class ReductionError(ValueError):
    """Input cannot be pushed into the residue field (denominator not a unit mod p)."""


@dataclass(frozen=True)
class MaximalIdeal:
    conductor: int
    prime: int
    factor: Poly  # monic irreducible factor of Phi_N mod p, low-to-high

    @property
    def residue_degree(self) -> int:
        return len(self.factor) - 1

    @property
    def residue_field(self) -> FiniteField:
        return FiniteField(self.prime, self.residue_degree, self.factor)

    def __repr__(self):
        return f"MaximalIdeal(N={self.conductor}, p={self.prime}, f={poly_str(self.factor)})"


def poly_str(f: Poly) -> str:
    terms = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("x" if c == 1 else f"{c}*x")
        else:
            terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
    return "+".join(terms) if terms else "0"


def parse_poly(text: str, p: int) -> Poly:
    """Inverse of poly_str for inputs like '1+x+2*x^3' (coefficients mod p)."""
    coeffs: dict[int, int] = {}
    cleaned = text.replace(" ", "").replace("-", "+-")
    for term in cleaned.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        if "x" not in term:
            coeffs[0] = coeffs.get(0, 0) + sign * int(term)
            continue
        coef_part, _, pow_part = term.partition("x")
        coef = int(coef_part.rstrip("*")) if coef_part.rstrip("*") else 1
        exp = int(pow_part.lstrip("^")) if pow_part else 1
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    n = max(coeffs) + 1 if coeffs else 0
    return _strip([coeffs.get(i, 0) % p for i in range(n)])


def maximal_ideals_over(conductor: int, p: int) -> list[MaximalIdeal]:
    """One ideal per distinct irreducible factor of Phi_N mod p, sorted."""
    n = conductor
    while n % p == 0:
        n //= p
    phi = tuple(c % p for c in cyclotomic_polynomial(n))
    factors = distinct_irreducible_factors(phi, p)
    return [MaximalIdeal(conductor, p, f) for f in factors]


def reduce_cyclo(x, ideal: MaximalIdeal) -> FFElem:
    """Ring homomorphism Z[zeta_N] (localized at p) -> F_{p^d}."""
    p = ideal.prime
    field = ideal.residue_field
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ReductionError(f"denominator {x.denominator} is not a unit mod {p}")
        val = (x.numerator * pow(x.denominator, -1, p)) % p
        return field.from_int(val)
    if not isinstance(x, CycloElem):
        raise TypeError(f"cannot reduce {type(x).__name__}")
    if x.field.conductor != ideal.conductor:
        x = CycloField(ideal.conductor).coerce(x)
    residues = []
    for c in x.coeffs:
        if c.denominator % p == 0:
            raise ReductionError(f"denominator {c.denominator} is not a unit mod {p}")
        residues.append((c.numerator * pow(c.denominator, -1, p)) % p)
    red = pol_mod(_strip(residues), ideal.factor, p)
    return field.from_coeffs(red)
