"""Exact scalar arithmetic: cyclotomic fields, finite fields, maximal-ideal
reduction, root-of-unity orders, and integer Smith normal form."""

from .cyclo import (
    CycloElem,
    CycloField,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    format_cyclo,
    root_of_unity,
)
from .gf import FFElem, FiniteField, PrimeField, default_modulus, is_irreducible
from .ideals import MaximalIdeal, ReductionError, maximal_ideals_over, parse_poly, poly_str, reduce_cyclo
from .rationals import QQ, RationalField
from .snf import smith_normal_form
from .units import OrderSplit, order_of_unit, unit_order_split

__all__ = [
    "CycloElem",
    "CycloField",
    "FFElem",
    "FiniteField",
    "MaximalIdeal",
    "OrderSplit",
    "PrimeField",
    "QQ",
    "RationalField",
    "ReductionError",
    "cyclotomic_polynomial",
    "default_modulus",
    "embed",
    "euler_phi",
    "format_cyclo",
    "is_irreducible",
    "maximal_ideals_over",
    "order_of_unit",
    "parse_poly",
    "poly_str",
    "reduce_cyclo",
    "root_of_unity",
    "smith_normal_form",
    "unit_order_split",
]
