"""Finite racks as operation tables: constructors, structural predicates,
inner group, simplicity and type-C searches, isomorphism, and the
abelianized enveloping-group derived subgroup.

Elements are 0..n-1 internally; `labels` optionally names them (group
elements for conjugacy-class racks, field elements for affine racks).
Racks are immutable after construction and validated eagerly unless
constructed with check=False.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .groups import (
    FiniteGroup,
    Perm,
    cycle_type,
    perm_conj,
    perm_mul,
)
from .scalars.gf import FiniteField
from .scalars.snf import smith_normal_form


class RackError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def validate_table(table) -> dict:
    """Exhaustive rack/quandle/abelian/faithful check with a failing witness.

    Returns {'is_rack', 'is_quandle', 'is_abelian', 'is_faithful', 'witness'};
    the last three are only meaningful when is_rack holds.
    """
    n = len(table)
    report = {"is_rack": True, "is_quandle": True, "is_abelian": True, "is_faithful": True,
              "witness": None}
    for x in range(n):
        if len(table[x]) != n:
            report["is_rack"] = False
            report["witness"] = ("ragged-row", x)
            return report
        if sorted(table[x]) != list(range(n)):
            report["is_rack"] = False
            report["witness"] = ("not-bijective", x)
            return report
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]]:
                    report["is_rack"] = False
                    report["witness"] = ("self-distributivity", (x, y, z))
                    return report
    report["is_quandle"] = all(table[x][x] == x for x in range(n))
    report["is_abelian"] = all(table[x][y] == y for x in range(n) for y in range(n))
    report["is_faithful"] = len({tuple(row) for row in table}) == n
    return report


class Rack:
    def __init__(self, table, labels=None, name: str = "", check: bool = True, meta=None):
        self.table = tuple(tuple(row) for row in table)
        self.n = len(self.table)
        if check:
            rep = validate_table(self.table)
            if not rep["is_rack"]:
                raise RackError(f"not a rack: {rep['witness']}", rep["witness"])
        self.inv_table = tuple(
            tuple(y for _, y in sorted((row[y], y) for y in range(self.n)))
            for row in self.table
        )
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        self.name = name or f"rack{self.n}"
        self.meta = dict(meta or {})
        self._inner = None

    # -- basic operations -------------------------------------------------------

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv_op(self, x: int, y: int) -> int:
        """The unique z with x > z = y."""
        return self.inv_table[x][y]

    def phi(self, x: int) -> Perm:
        return self.table[x]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Rack({self.name}, n={self.n})"

    def __eq__(self, other):
        if isinstance(other, Rack):
            return self.table == other.table
        return NotImplemented

    def __hash__(self):
        return hash(self.table)

    # -- predicates --------------------------------------------------------------

    def is_quandle(self) -> bool:
        return all(self.table[x][x] == x for x in range(self.n))

    def is_abelian(self) -> bool:
        return all(self.table[x][y] == y for x in range(self.n) for y in range(self.n))

    def is_faithful(self) -> bool:
        return len(set(self.table)) == self.n

    def inner_group(self) -> FiniteGroup:
        if self._inner is None:
            gens = sorted(set(self.table))
            self._inner = FiniteGroup(gens, name=f"Inn({self.name})")
        return self._inner

    def inner_orbits(self, within=None) -> list[frozenset[int]]:
        """Orbits of the translation subgroup generated inside `within` (default: all)."""
        points = sorted(within) if within is not None else list(range(self.n))
        point_set = set(points)
        gens = [self.table[x] for x in points]
        orbits = []
        seen: set[int] = set()
        for p in points:
            if p in seen:
                continue
            orbit = {p}
            frontier = [p]
            while frontier:
                new = []
                for q in frontier:
                    for g in gens:
                        r = g[q]
                        if r in point_set and r not in orbit:
                            orbit.add(r)
                            new.append(r)
                frontier = new
            seen |= orbit
            orbits.append(frozenset(orbit))
        return orbits

    def is_indecomposable(self) -> bool:
        return len(self.inner_orbits()) == 1

    def subrack_closure(self, seed) -> frozenset[int]:
        closed = set(seed)
        frontier = list(closed)
        while frontier:
            new = []
            for x in list(closed):
                for y in frontier:
                    for z in (self.table[x][y], self.inv_table[x][y],
                              self.table[y][x], self.inv_table[y][x]):
                        if z not in closed:
                            closed.add(z)
                            new.append(z)
            frontier = new
        return frozenset(closed)

    def restrict(self, subset) -> "Rack":
        subset = sorted(subset)
        pos = {x: i for i, x in enumerate(subset)}
        table = [[pos[self.table[x][y]] for y in subset] for x in subset]
        return Rack(table, labels=[self.labels[x] for x in subset],
                    name=f"{self.name}|{len(subset)}", check=False)

    # -- file format ---------------------------------------------------------------

    def to_text(self) -> str:
        lines = [str(self.n)]
        for row in self.table:
            lines.append(" ".join(map(str, row)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str, name: str = "rack-file") -> "Rack":
        tokens = text.split()
        if not tokens:
            raise RackError("empty rack file")
        n = int(tokens[0])
        vals = [int(t) for t in tokens[1:]]
        if len(vals) != n * n:
            raise RackError(f"expected {n}x{n} entries, got {len(vals)}")
        table = [vals[i * n:(i + 1) * n] for i in range(n)]
        return Rack(table, name=name)


# -- constructors ------------------------------------------------------------------


def conjugacy_class_rack(group: FiniteGroup, g: Perm, name: str = "") -> Rack:
    g = tuple(g)
    cls = sorted(group.conjugacy_class(g))
    pos = {x: i for i, x in enumerate(cls)}
    table = [[pos[perm_conj(x, y)] for y in cls] for x in cls]
    return Rack(table, labels=cls, name=name or f"class({group.name})", check=False,
                meta={"group": group, "class": cls})


def union_class_rack(group: FiniteGroup, reps, name: str = "") -> Rack:
    elems: set[Perm] = set()
    for g in reps:
        elems |= group.conjugacy_class(tuple(g))
    cls = sorted(elems)
    pos = {x: i for i, x in enumerate(cls)}
    table = [[pos[perm_conj(x, y)] for y in cls] for x in cls]
    return Rack(table, labels=cls, name=name or f"union({group.name})", check=False,
                meta={"group": group})


def disjoint_union_rack(a: Rack, b: Rack) -> Rack:
    n = a.n + b.n
    table = [[0] * n for _ in range(n)]
    for x in range(a.n):
        for y in range(a.n):
            table[x][y] = a.table[x][y]
        for y in range(b.n):
            table[x][a.n + y] = a.n + y
    for x in range(b.n):
        for y in range(a.n):
            table[a.n + x][y] = y
        for y in range(b.n):
            table[a.n + x][a.n + y] = a.n + b.table[x][y]
    return Rack(table, name=f"{a.name}+{b.name}", check=False)


def affine_field_rack(q: int, d) -> Rack:
    """Aff(F_q, d): x > y = (1-d)x + dy, labels in canonical field order."""
    field, delem = _field_scalar(q, d)
    points = sorted(field.elements(), key=lambda e: e.coeffs)
    pos = {e.coeffs: i for i, e in enumerate(points)}
    one = field.one
    table = [
        [pos[((one - delem) * x + delem * y).coeffs] for y in points]
        for x in points
    ]
    dcode = _ff_code(delem)
    return Rack(table, labels=[p.coeffs for p in points], name=f"aff({q},{dcode})",
                check=False, meta={"affine_field": (q, dcode)})


def _field_scalar(q: int, d):
    from .groups import _field_and_scalar

    return _field_and_scalar(q, d)


def _ff_code(e) -> int:
    code = 0
    for c in reversed(e.coeffs):
        code = code * e.field.p + c
    return code


def tetrahedron_rack() -> Rack:
    """The 4-element rack underlying the tetrahedral module table."""
    table = [[0, 3, 1, 2], [2, 1, 3, 0], [3, 0, 2, 1], [1, 2, 0, 3]]
    return Rack(table, name="tetra", meta={"tetra": True})


def affine_module_rack(orders, matrix) -> Rack:
    """Aff(Gamma, t) for Gamma = prod Z_{orders[i]}, t given by an integer
    matrix acting on column coordinate vectors (t(e_j) = matrix column j)."""
    elems = _module_elements(orders)
    pos = {e: i for i, e in enumerate(elems)}
    r = len(orders)

    def t(v):
        return tuple(
            sum(matrix[i][j] * v[j] for j in range(r)) % orders[i] for i in range(r)
        )

    if sorted(t(e) for e in elems) != sorted(elems):
        raise RackError("matrix does not define a bijection")
    table = []
    for x in elems:
        tx = t(x)
        row = []
        for y in elems:
            ty = t(y)
            row.append(pos[tuple((x[i] - tx[i] + ty[i]) % orders[i] for i in range(r))])
        table.append(row)
    return Rack(table, labels=elems, name=f"aff({'x'.join(map(str, orders))})",
                meta={"module": (tuple(orders), tuple(map(tuple, matrix)))})


def _module_elements(orders):
    elems = [()]
    for m in orders:
        elems = [e + (i,) for e in elems for i in range(m)]
    return sorted(elems)


def is_fixed_point_free(orders, matrix) -> bool:
    """Only fixed point of the (matrix-defined) automorphism is 0."""
    r = len(orders)
    for v in _module_elements(orders):
        tv = tuple(sum(matrix[i][j] * v[j] for j in range(r)) % orders[i] for i in range(r))
        if tv == v and any(v):
            return False
    return True


def is_fixed_point_free_field(q: int, d) -> bool:
    field, delem = _field_scalar(q, d)
    return delem != field.one


# -- simplicity via congruences ------------------------------------------------------


SIMPLE_SEARCH_CAP = 16


def _congruence_closure(rack: Rack, a: int, b: int) -> list[int]:
    """Class representatives of the smallest congruence identifying a and b."""
    n = rack.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for z in range(n):
            queue.append((rack.table[z][x], rack.table[z][y]))
            queue.append((rack.table[x][z], rack.table[y][z]))
    return [find(x) for x in range(n)]


def is_simple(rack: Rack, cap: int = SIMPLE_SEARCH_CAP) -> bool:
    """Simple: not abelian, |X| > 1, and every proper quotient is trivial."""
    if rack.n > cap:
        raise RackError(f"simplicity search capped at {cap} elements")
    if rack.n <= 1 or rack.is_abelian():
        return False
    for a in range(rack.n):
        for b in range(a + 1, rack.n):
            classes = _congruence_closure(rack, a, b)
            if len(set(classes)) != 1:
                return False
    return True


# -- type C ----------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeCWitness:
    subrack: tuple[int, ...]
    orbit_r: tuple[int, ...]
    orbit_s: tuple[int, ...]
    r: int
    s: int

    def sizes(self) -> tuple[int, int]:
        return len(self.orbit_r), len(self.orbit_s)


def _check_type_c_subrack(rack: Rack, y: frozenset[int]) -> TypeCWitness | None:
    orbits = rack.inner_orbits(within=y)
    if len(orbits) != 2:
        return None
    orb_r, orb_s = sorted(orbits, key=lambda o: (len(o), sorted(o)))
    sizes = (len(orb_r), len(orb_s))
    if not (min(sizes) > 2 or max(sizes) > 4):
        return None
    for r in sorted(orb_r):
        for s in sorted(orb_s):
            if rack.table[r][s] != s:
                return TypeCWitness(tuple(sorted(y)), tuple(sorted(orb_r)),
                                    tuple(sorted(orb_s)), r, s)
    return None


def verify_type_c_witness(rack: Rack, w: TypeCWitness) -> bool:
    y = frozenset(w.subrack)
    if rack.subrack_closure(y) != y:
        return False
    orbits = {frozenset(o) for o in rack.inner_orbits(within=y)}
    if orbits != {frozenset(w.orbit_r), frozenset(w.orbit_s)}:
        return False
    if w.r not in w.orbit_r or w.s not in w.orbit_s:
        return False
    if rack.table[w.r][w.s] == w.s:
        return False
    sizes = w.sizes()
    return min(sizes) > 2 or max(sizes) > 4


EXHAUSTIVE_SUBRACK_CAP = 14


def is_type_c(rack: Rack, exhaustive_cap: int = EXHAUSTIVE_SUBRACK_CAP):
    """Search for a type-C witness.

    Returns (witness_or_None, exhaustive) where exhaustive=True promises
    that absence of a witness is a proof (every subrack was considered).
    """
    if rack.is_abelian():
        return None, True

    candidates: set[frozenset[int]] = set()
    noncommuting = [
        (r, s) for r in range(rack.n) for s in range(rack.n) if rack.table[r][s] != s
    ]
    for r, s in noncommuting:
        candidates.add(rack.subrack_closure({r, s}))
    full_orbits = rack.inner_orbits()
    for o1, o2 in combinations(full_orbits, 2):
        candidates.add(rack.subrack_closure(o1 | o2))

    exhaustive = False
    if rack.n <= exhaustive_cap:
        exhaustive = True
        for size in range(2, rack.n + 1):
            for subset in combinations(range(rack.n), size):
                y = frozenset(subset)
                if rack.subrack_closure(y) == y:
                    candidates.add(y)

    best = None
    for y in sorted(candidates, key=lambda c: (len(c), sorted(c))):
        w = _check_type_c_subrack(rack, y)
        if w is not None:
            best = w
            break
    return best, exhaustive


# -- isomorphism -------------------------------------------------------------------------


def _profiles(rack: Rack) -> list:
    base = []
    orbit_of = {}
    for orbit in rack.inner_orbits():
        for x in orbit:
            orbit_of[x] = len(orbit)
    for x in range(rack.n):
        base.append((cycle_type(rack.table[x]), rack.table[x][x] == x, orbit_of[x]))
    # one refinement round over the operation
    refined = []
    for x in range(rack.n):
        row = sorted((base[rack.table[x][y]], base[rack.table[y][x]]) for y in range(rack.n))
        refined.append((base[x], tuple(row)))
    return refined


def rack_isomorphism(a: Rack, b: Rack) -> list[int] | None:
    """A bijection f (as a list: f[x] in b) with f(x>y) = f(x)>f(y), or None."""
    if a.n != b.n:
        return None
    pa, pb = _profiles(a), _profiles(b)
    if sorted(pa) != sorted(pb):
        return None
    # order source elements by profile rarity for early pruning
    rarity: dict = {}
    for p in pa:
        rarity[p] = rarity.get(p, 0) + 1
    order = sorted(range(a.n), key=lambda x: (rarity[pa[x]], x))
    candidates = {x: [y for y in range(b.n) if pb[y] == pa[x]] for x in order}
    fwd: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(i):
        if i == len(order):
            return True
        x = order[i]
        for y in candidates[x]:
            if y in used:
                continue
            fwd[x] = y
            used.add(y)
            # consistency of the partial map on every pair involving x
            ok = True
            for u, v in fwd.items():
                iu = a.table[x][u]
                ui = a.table[u][x]
                if iu in fwd and fwd[iu] != b.table[y][v]:
                    ok = False
                    break
                if ui in fwd and fwd[ui] != b.table[v][y]:
                    ok = False
                    break
            if ok and backtrack(i + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    if backtrack(0):
        return [fwd[x] for x in range(a.n)]
    return None


# -- enveloping-group abelianization --------------------------------------------------------


def dx_abelianization(rack: Rack, basepoint: int = 0) -> tuple[int, ...]:
    """Invariant factors (>1) of the abelianized derived subgroup of the
    enveloping group, from the basepointed presentation
    gamma_b = e,  gamma_x gamma_{b>y} = gamma_{x>y} gamma_{b>x}."""
    if not rack.is_quandle():
        raise RackError("abelianization presentation requires a quandle")
    if not rack.is_indecomposable():
        raise RackError("abelianization presentation requires an indecomposable rack")
    n = rack.n
    b = basepoint
    rows = []
    row = [0] * n
    row[b] = 1
    rows.append(row)
    for x in range(n):
        for y in range(n):
            row = [0] * n
            row[x] += 1
            row[rack.table[b][y]] += 1
            row[rack.table[x][y]] -= 1
            row[rack.table[b][x]] -= 1
            if any(row):
                rows.append(row)
    divisors = smith_normal_form(rows)
    free_rank = n - len(divisors)
    if free_rank:
        # a finite rack always has finite D_X; a free part would flag a bug
        raise RackError(f"unexpected free rank {free_rank} in abelianization")
    return tuple(d for d in divisors if d != 1)


# -- affine structure detection ---------------------------------------------------------------


@dataclass
class AffineStructure:
    zero: int
    add: tuple[tuple[int, ...], ...]  # group table on rack labels
    t: Perm                          # the automorphism, as phi_zero
    element_orders: tuple[int, ...]

    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders) if self.element_orders else 1


def as_affine(rack: Rack) -> AffineStructure | None:
    """Recover (Gamma, t) with rack = Aff(Gamma, t), basepointed at 0, if any.

    For an affine rack any basepoint works (translations are rack
    automorphisms), so a single basepoint decides.
    """
    n = rack.n
    if n == 0 or not rack.is_quandle():
        return None
    t = rack.table[0]
    u = [rack.table[x][0] for x in range(n)]  # u(x) = (1-t)(x)
    if sorted(u) != list(range(n)):
        return None
    u_inv = [0] * n
    for x, ux in enumerate(u):
        u_inv[ux] = x
    t_inv = rack.inv_table[0]
    add = [[rack.table[u_inv[a]][t_inv[b]] for b in range(n)] for a in range(n)]
    # commutativity + associativity (identity and cancellation hold by construction)
    for a in range(n):
        for b in range(n):
            if add[a][b] != add[b][a]:
                return None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    return None
    # t respects addition
    for a in range(n):
        for b in range(n):
            if t[add[a][b]] != add[t[a]][t[b]]:
                return None
    # reconstruction x > y = u(x) + t(y)
    for x in range(n):
        for y in range(n):
            if rack.table[x][y] != add[u[x]][t[y]]:
                return None
    orders = []
    for a in range(n):
        k, cur = 1, a
        while cur != 0:
            cur = add[cur][a]
            k += 1
        orders.append(k)
    return AffineStructure(0, tuple(map(tuple, add)), t, tuple(orders))
