"""Registry of the known finite-dimensional Nichols algebras over
indecomposable racks at these sizes, with their literature dimensions.

Matching is up to rack isomorphism and diagonal cocycle equivalence, so
realizations found by induction from a group hit the same entries as the
literal constructors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braided import BraidedSpace, Cocycle, cocycles_cohomologous
from .racks import Rack, rack_isomorphism


@dataclass(frozen=True)
class KnownExample:
    key: str
    rack_literal: str
    cocycle_literal: str
    char_constraint: tuple      # ("any",) | ("eq", p) | ("ne", p) | ("zero",)
    dimension: int
    citation: str
    desk_computable: bool = True
    note: str = ""

    def char_ok(self, characteristic: int) -> bool:
        kind = self.char_constraint[0]
        if kind == "any":
            return True
        if kind == "zero":
            return characteristic == 0
        if kind == "eq":
            return characteristic == self.char_constraint[1]
        if kind == "ne":
            return characteristic != self.char_constraint[1]
        raise ValueError(self.char_constraint)


def _affine_dim(p: int) -> int:
    return (p - 1) ** (p - 1) * p


REGISTRY: list[KnownExample] = [
    KnownExample("aff(3,2)-eps", "aff(3,2)", "eps", ("any",), _affine_dim(3),
                 "MR1667680;MR1800714;MR2803792"),
    KnownExample("aff(5,2)-eps", "aff(5,2)", "eps", ("any",), _affine_dim(5),
                 "MR1800709;MR2803792"),
    KnownExample("aff(5,3)-eps", "aff(5,3)", "eps", ("any",), _affine_dim(5),
                 "MR1800709;MR2803792"),
    KnownExample("aff(7,3)-eps", "aff(7,3)", "eps", ("any",), _affine_dim(7),
                 "MR1800709;MR2803792", desk_computable=False),
    KnownExample("aff(7,5)-eps", "aff(7,5)", "eps", ("any",), _affine_dim(7),
                 "MR1800709;MR2803792", desk_computable=False),
    KnownExample("tetra-(1,-1)", "tetra", "tetra(1,-1)", ("ne", 2), 72,
                 "MR1800709;MR2803792"),
    KnownExample("tetra-(1,-1)-char2", "tetra", "tetra(1,-1)", ("eq", 2), 36,
                 "MR2803792"),
    KnownExample("tetra-(-1,w)", "tetra", "tetra(-1,z3)", ("zero",), 5184,
                 "MR2891215", desk_computable=False,
                 note="top-of-desk-scale; degree<=6 dims are engine-checked instead"),
    KnownExample("O42-eps", "class(S4,(0 1))", "eps", ("any",), 576,
                 "MR1667680;MR1800714;MR2803792"),
    KnownExample("O42-chi4", "class(S4,(0 1))", "chi4", ("any",), 576,
                 "MR1667680;MR1800714;MR2803792"),
    KnownExample("O44-eps", "class(S4,(0 1 2 3))", "eps", ("any",), 576,
                 "MR1994219;MR2803792"),
    KnownExample("O52-eps", "class(S5,(0 1))", "eps", ("zero",), 8294400,
                 "MR1800714", desk_computable=False),
    KnownExample("O52-chi5", "class(S5,(0 1))", "chi5", ("zero",), 8294400,
                 "MR1800714", desk_computable=False,
                 note="chi5 analogous to chi4; not constructed here"),
    KnownExample("aff(3,2)-w-char2", "aff(3,2)", "const:z3", ("eq", 2), 432,
                 "MR2891215",
                 note="the characteristic-2 dimension-432 algebra on the "
                      "3-element rack; the cocycle is the order-3 constant "
                      "(the constant -1 reduces to 1 mod 2 and yields total "
                      "12, verified by this engine)"),
]


_RACK_CACHE: dict[str, Rack] = {}
_COCYCLE_CACHE: dict[tuple, Cocycle] = {}


def _registry_rack(literal: str) -> Rack | None:
    from .literals import parse_rack

    if literal not in _RACK_CACHE:
        try:
            _RACK_CACHE[literal] = parse_rack(literal)
        except Exception:
            return None
    return _RACK_CACHE[literal]


def _registry_cocycles(entry: KnownExample, rack: Rack, field) -> list[Cocycle]:
    """Registry cocycle over the caller's field; in characteristic p a
    characteristic-0 entry contributes one reduction per ideal over p."""
    from .braided import field_conductor
    from .literals import LiteralError, parse_cocycle
    from .scalars.ideals import ReductionError, maximal_ideals_over

    key = (entry.key, id(field))
    if key in _COCYCLE_CACHE:
        return _COCYCLE_CACHE[key]
    out: list[Cocycle] = []
    try:
        out.append(parse_cocycle(rack, entry.cocycle_literal, field))
    except (LiteralError, ValueError, TypeError):
        p = getattr(field, "characteristic", 0)
        if p:
            try:
                natural = parse_cocycle(rack, entry.cocycle_literal)
                conductor = field_conductor(natural.field)
                for ideal in maximal_ideals_over(conductor, p):
                    try:
                        reduced = BraidedSpace(rack, natural).reduce_mod(ideal)
                    except ReductionError:
                        continue
                    if reduced.field is field:
                        out.append(reduced.cocycle)
            except (LiteralError, ValueError, TypeError):
                pass
    _COCYCLE_CACHE[key] = out
    return out


def rack_isomorphisms_upto(a: Rack, b: Rack, limit: int = 64):
    """A few isomorphisms a -> b (label permutations), for cocycle transport."""
    first = rack_isomorphism(a, b)
    if first is None:
        return
    yield first
    # compose with inner automorphisms of b for more candidates
    seen = {tuple(first)}
    count = 1
    frontier = [first]
    while frontier and count < limit:
        new = []
        for f in frontier:
            for x in range(b.n):
                phi = b.table[x]
                g = [phi[v] for v in f]
                t = tuple(g)
                if t not in seen:
                    seen.add(t)
                    new.append(g)
                    count += 1
                    yield g
                    if count >= limit:
                        return
        frontier = new


def lookup(space: BraidedSpace):
    """Match a braided space against the registry.

    Returns (entry, iso) or None; iso maps registry-rack indices to space
    indices under which the cocycles are diagonally equivalent.
    """
    characteristic = getattr(space.field, "characteristic", 0)
    for entry in REGISTRY:
        if not entry.char_ok(characteristic):
            continue
        reg_rack = _registry_rack(entry.rack_literal)
        if reg_rack is None or reg_rack.n != space.rack.n:
            continue
        candidates = _registry_cocycles(entry, reg_rack, space.field)
        if not candidates:
            continue
        for iso in rack_isomorphisms_upto(reg_rack, space.rack):
            for reg_cocycle in candidates:
                transported = _transport(reg_cocycle, space.rack, iso, space.field)
                if cocycles_cohomologous(transported, space.cocycle) is not None:
                    return entry, iso
    return None


def _transport(cocycle: Cocycle, target_rack: Rack, iso, field) -> Cocycle:
    """Push a cocycle along a rack isomorphism f: q'[f(x)][f(y)] = q[x][y]."""
    n = target_rack.n
    matrix = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            matrix[iso[x]][iso[y]] = cocycle.matrix[x][y]
    return Cocycle(target_rack, field, matrix, name=f"{cocycle.name}^iso")
