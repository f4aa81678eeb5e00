"""Literal syntax shared by the CLI, file formats, and certificates.

Scalars:  integers ("-1", "3"), "z<N>^<k>" for the N-th root of unity,
sums/products/quotients of these ("1+z3", "z8^3*z8"), and finite-field
elements "ff(<p>,<k>):<poly>" with the generator written "x" ("ff(2,2):x+1").

Racks:    "aff(q,d)", "tetra", "class(S4,(0 1))", "union(A,B)", or a file
in the plain-text table format.

Cocycles: "eps", "one", "chi4", "tetra(eps,q)", "const:<scalar>", or a
file of n then n*n scalar literals.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .braided import (
    BraidedSpace,
    Cocycle,
    chi4_cocycle,
    constant_cocycle,
    eps_cocycle,
    one_cocycle,
    tetrahedron_module,
    unify_scalars,
)
from .groups import parse_cycles, parse_group
from .racks import (
    Rack,
    RackError,
    affine_field_rack,
    conjugacy_class_rack,
    disjoint_union_rack,
    tetrahedron_rack,
    union_class_rack,
)
from .scalars.cyclo import CycloElem, CycloField, format_cyclo
from .scalars.gf import FFElem, FiniteField, PrimeField
from .scalars.ideals import parse_poly, poly_str
from .scalars.rationals import QQ


class LiteralError(ValueError):
    pass


# -- scalars -------------------------------------------------------------------


def format_scalar(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, CycloElem):
        return format_cyclo(x)
    if isinstance(x, FFElem):
        return f"ff({x.field.p},{x.field.k}):{poly_str(tuple(x.coeffs))}"
    raise LiteralError(f"cannot format scalar of type {type(x).__name__}")


_TOKEN = re.compile(r"\s*(z\d+|\d+|[()+\-*/^])")


def parse_scalar(text: str):
    """Parse a scalar literal; returns Fraction, CycloElem, or FFElem."""
    text = text.strip()
    m = re.fullmatch(r"ff\((\d+)\s*,\s*(\d+)\)\s*:(.*)", text)
    if m:
        p, k, poly = int(m.group(1)), int(m.group(2)), m.group(3)
        field = FiniteField(p, k)
        coeffs = parse_poly(poly, p)
        if len(coeffs) > k:
            raise LiteralError(f"polynomial degree too large for F_{p}^{k}")
        return field.from_coeffs(coeffs)

    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"bad scalar literal near {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append("$")
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take():
        t = tokens[idx[0]]
        idx[0] += 1
        return t

    def atom():
        t = take()
        if t == "(":
            v = expr()
            if take() != ")":
                raise LiteralError("unbalanced parentheses")
            return v
        if t.startswith("z"):
            n = int(t[1:])
            val = CycloField(n).zeta()
            return val
        if t.isdigit():
            return Fraction(int(t))
        raise LiteralError(f"unexpected token {t!r}")

    def factor():
        neg = False
        while peek() == "-":
            take()
            neg = not neg
        v = atom()
        if peek() == "^":
            take()
            sign = 1
            while peek() == "-":
                take()
                sign = -sign
            e = take()
            if not e.isdigit():
                raise LiteralError("exponent must be an integer")
            v = _pow(v, sign * int(e))
        return _neg(v) if neg else v

    def term():
        v = factor()
        while peek() in ("*", "/"):
            op = take()
            w = factor()
            v = _mul(v, w) if op == "*" else _mul(v, _pow(w, -1))
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = _add(v, w) if op == "+" else _add(v, _neg(w))
        return v

    value = expr()
    if peek() != "$":
        raise LiteralError(f"trailing input in scalar literal {text!r}")
    return value


def _join(a, b):
    field, (a2, b2) = unify_scalars([a, b])
    return field, a2, b2


def _add(a, b):
    field, a, b = _join(a, b)
    return field.add(a, b)


def _mul(a, b):
    field, a, b = _join(a, b)
    return field.mul(a, b)


def _neg(a):
    if isinstance(a, Fraction):
        return -a
    return -a


def _pow(a, e: int):
    if isinstance(a, Fraction):
        if e < 0:
            return Fraction(1) / (a ** (-e))
        return a**e
    return a**e


def parse_field(text: str):
    """Field literals: Q, F2, F(2,2), Q(z3)."""
    text = text.strip()
    if text in ("Q", "q", "QQ"):
        return QQ
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"F\((\d+)\s*,\s*(\d+)\)", text)
    if m:
        p, k = int(m.group(1)), int(m.group(2))
        return PrimeField(p) if k == 1 else FiniteField(p, k)
    m = re.fullmatch(r"Q\(z(\d+)\)", text)
    if m:
        n = int(m.group(1))
        return QQ if n <= 2 else CycloField(n)
    raise LiteralError(f"unrecognized field literal {text!r}")


def format_field(field) -> str:
    if field is QQ:
        return "Q"
    if isinstance(field, CycloField):
        return f"Q(z{field.conductor})"
    if isinstance(field, PrimeField):
        return f"F{field.p}"
    if isinstance(field, FiniteField):
        return f"F({field.p},{field.k})"
    raise LiteralError(f"cannot format field {field!r}")


# -- racks ---------------------------------------------------------------------


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_rack(text: str) -> Rack:
    text = text.strip()
    if text == "tetra":
        return tetrahedron_rack()
    m = re.fullmatch(r"aff\((\d+)\s*,\s*(\d+)\)", text)
    if m:
        return affine_field_rack(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"class\((.+)\)", text)
    if m:
        args = _split_args(m.group(1))
        if len(args) != 2:
            raise LiteralError("class(GROUP,(cycles)) takes two arguments")
        group = parse_group(args[0])
        g = parse_cycles(args[1], group.degree)
        return conjugacy_class_rack(group, g, name=text)
    m = re.fullmatch(r"union\((.+)\)", text)
    if m:
        args = _split_args(m.group(1))
        if len(args) < 2:
            raise LiteralError("union(...) needs at least two components")
        class_specs = []
        for a in args:
            cm = re.fullmatch(r"class\((.+)\)", a)
            if not cm:
                class_specs = None
                break
            cargs = _split_args(cm.group(1))
            class_specs.append((cargs[0], cargs[1]))
        if class_specs and len({s[0] for s in class_specs}) == 1:
            group = parse_group(class_specs[0][0])
            reps = [parse_cycles(c, group.degree) for _, c in class_specs]
            return union_class_rack(group, reps, name=text)
        racks = [parse_rack(a) for a in args]
        out = racks[0]
        for r in racks[1:]:
            out = disjoint_union_rack(out, r)
        return out
    if "\n" in text or text.split() and text.split()[0].isdigit():
        return Rack.from_text(text)
    raise LiteralError(f"unrecognized rack literal {text!r}")


# -- cocycles and braided spaces --------------------------------------------------


def parse_cocycle(rack: Rack, text: str, field=None) -> Cocycle:
    text = text.strip()
    if text == "eps":
        return eps_cocycle(rack, field)
    if text == "one":
        return one_cocycle(rack, field)
    if text == "chi4":
        crack, cocycle = chi4_cocycle(field)
        if crack.table != rack.table:
            raise LiteralError("chi4 lives on class(S4,(0 1)); rack table differs")
        return Cocycle(rack, cocycle.field, cocycle.matrix, name="chi4")
    m = re.fullmatch(r"tetra\((-?1)\s*,\s*(.+)\)", text)
    if m:
        space = tetrahedron_module(int(m.group(1)), parse_scalar(m.group(2)), field)
        if rack.table != space.rack.table:
            raise LiteralError("tetra(eps,q) lives on the tetra rack; table differs")
        return Cocycle(rack, space.field, space.cocycle.matrix, name=space.cocycle.name)
    if text.startswith("const:"):
        return constant_cocycle(rack, parse_scalar(text[len("const:"):]), field)
    tokens = text.split()
    if tokens and tokens[0].isdigit() and len(tokens) == 1 + int(tokens[0]) ** 2:
        n = int(tokens[0])
        if n != rack.n:
            raise LiteralError(f"cocycle file is {n}x{n} but the rack has {rack.n} elements")
        values = [parse_scalar(t) for t in tokens[1:]]
        if field is None:
            field, values = unify_scalars(values)
        else:
            values = [field.coerce(v) for v in values]
        matrix = [values[i * n:(i + 1) * n] for i in range(n)]
        return Cocycle(rack, field, matrix, name="cocycle-file")
    # plain scalar literal means the constant cocycle
    try:
        scalar = parse_scalar(text)
    except LiteralError:
        raise LiteralError(f"unrecognized cocycle literal {text!r}") from None
    return constant_cocycle(rack, scalar, field)


def cocycle_to_text(cocycle: Cocycle) -> str:
    n = cocycle.rack.n
    lines = [str(n)]
    for row in cocycle.matrix:
        lines.append(" ".join(format_scalar(v) for v in row))
    return "\n".join(lines) + "\n"


def braided_space_from_literals(rack_text: str, cocycle_text: str, field_text: str | None = None) -> BraidedSpace:
    rack = parse_rack(rack_text)
    field = parse_field(field_text) if field_text else None
    cocycle = parse_cocycle(rack, cocycle_text, field)
    return BraidedSpace(rack, cocycle, name=f"({rack_text},{cocycle_text})")
