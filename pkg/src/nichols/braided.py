"""Scalar 2-cocycles on racks, the braided vector spaces (kX, c^q) they
generate, Yetter-Drinfeld realizations over finite permutation groups, and
diagonal-type Dynkin data with the characteristic-p lookup.

A braided space is (rack, cocycle matrix, field).  The braiding on basis
vectors is c(v_x (x) v_y) = q[x][y] v_{x>y} (x) v_x.  Realizations over a
group G record the inducing data (g, chi) and the transporter choice; the
extracted cocycle depends on that choice only up to a diagonal change of
basis, which no downstream dimension ever sees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .groups import FiniteGroup, Perm, Subgroup, perm_conj, perm_inv, perm_mul, small_generating_set
from .racks import Rack, RackError, conjugacy_class_rack, tetrahedron_rack
from .scalars.cyclo import CycloElem, CycloField
from .scalars.gf import FFElem, FiniteField, PrimeField
from .scalars.ideals import MaximalIdeal, reduce_cyclo
from .scalars.rationals import QQ
from .scalars.units import order_in_field, order_of_unit


class CocycleError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# -- scalar/field plumbing ------------------------------------------------------


def field_of_scalar(x):
    if isinstance(x, (int, Fraction)):
        return QQ
    if isinstance(x, CycloElem):
        return x.field
    if isinstance(x, FFElem):
        return x.field if x.field.k > 1 else PrimeField(x.field.p)
    raise TypeError(f"unsupported scalar {type(x).__name__}")


def unify_scalars(values):
    """Common field for a batch of scalars, coercing each into it.

    Cyclotomic values land in the lcm conductor; rationals embed anywhere;
    finite-field values must share one field.
    """
    fields = [field_of_scalar(v) for v in values]
    finite = [f for f in fields if getattr(f, "characteristic", 0)]
    if finite:
        target = finite[0]
        if any(f is not target for f in finite):
            raise ValueError("mixed finite fields")
        return target, [target.coerce(v) for v in values]
    conductor = 1
    for f in fields:
        conductor = lcm(conductor, getattr(f, "conductor", 1))
    if conductor <= 2:
        out = []
        for v in values:
            if isinstance(v, CycloElem):
                out.append(v.rational_value() if v.field.conductor == 1 else _cond2_to_q(v))
            else:
                out.append(Fraction(v))
        return QQ, out
    target = CycloField(conductor)
    return target, [target.coerce(v) for v in values]


def _cond2_to_q(v: CycloElem) -> Fraction:
    # Phi_2 = x + 1, so the single coordinate is already the rational value
    return v.coeffs[0]


def field_conductor(field) -> int:
    """Conductor of a characteristic-0 scalar field (Q counts as 1)."""
    if field is QQ:
        return 1
    if isinstance(field, CycloField):
        return field.conductor
    raise ValueError("conductor only makes sense in characteristic 0")


# -- cocycles ---------------------------------------------------------------------


class Cocycle:
    def __init__(self, rack: Rack, field, matrix, name: str = ""):
        self.rack = rack
        self.field = field
        self.matrix = tuple(tuple(row) for row in matrix)
        self.name = name or "cocycle"
        n = rack.n
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise CocycleError("cocycle matrix shape does not match the rack")
        for x in range(n):
            for y in range(n):
                if field.is_zero(self.matrix[x][y]):
                    raise CocycleError(f"zero entry at ({x},{y})", (x, y))

    def __getitem__(self, pair):
        x, y = pair
        return self.matrix[x][y]

    def validate(self):
        """Exhaustive cocycle identity check; (True, None) or (False, triple)."""
        t = self.rack.table
        q = self.matrix
        f = self.field
        n = self.rack.n
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = f.mul(q[x][t[y][z]], q[y][z])
                    rhs = f.mul(q[t[x][y]][t[x][z]], q[x][z])
                    if not f.eq(lhs, rhs):
                        return False, (x, y, z)
        return True, None

    def is_constant(self):
        first = self.matrix[0][0]
        if all(self.field.eq(v, first) for row in self.matrix for v in row):
            return first
        return None

    def __repr__(self):
        return f"Cocycle({self.name} on {self.rack.name} over {self.field!r})"


def constant_cocycle(rack: Rack, scalar, field=None, name: str = "") -> Cocycle:
    if field is None:
        field, (scalar,) = unify_scalars([scalar])
    else:
        scalar = field.coerce(scalar)
    matrix = [[scalar] * rack.n for _ in range(rack.n)]
    return Cocycle(rack, field, matrix, name=name or f"const({scalar})")


def eps_cocycle(rack: Rack, field=None) -> Cocycle:
    field = field or QQ
    return constant_cocycle(rack, field.from_int(-1), field, name="eps")


def one_cocycle(rack: Rack, field=None) -> Cocycle:
    field = field or QQ
    return constant_cocycle(rack, field.one, field, name="one")


def chi4_cocycle(field=None):
    """The sign cocycle on the rack of transpositions in S_4.

    chi4(sigma, (i j)) is +1 when sigma(i) < sigma(j) (for i < j) and -1
    otherwise.  Returns (rack, cocycle) with the rack labeled by the
    transpositions in lexicographic order.
    """
    from .groups import symmetric_group, parse_cycles

    field = field or QQ
    S4 = symmetric_group(4)
    rack = conjugacy_class_rack(S4, parse_cycles("(0 1)", 4), name="O42")
    one, minus = field.one, field.from_int(-1)
    matrix = []
    for sigma in rack.labels:
        row = []
        for tau in rack.labels:
            moved = [p for p in range(4) if tau[p] != p]
            i, j = min(moved), max(moved)
            row.append(one if sigma[i] < sigma[j] else minus)
        matrix.append(row)
    return rack, Cocycle(rack, field, matrix, name="chi4")


# -- braided vector spaces -----------------------------------------------------------


class BraidedSpace:
    def __init__(self, rack: Rack, cocycle: Cocycle, realization=None, name: str = ""):
        if cocycle.rack is not rack and cocycle.rack.table != rack.table:
            raise CocycleError("cocycle is attached to a different rack")
        self.rack = rack
        self.cocycle = cocycle
        self.field = cocycle.field
        self.realization = realization
        self.name = name or f"({rack.name},{cocycle.name})"

    @property
    def dim(self) -> int:
        return self.rack.n

    def braid(self, x: int, y: int):
        """c(v_x (x) v_y) = scalar * v_{x>y} (x) v_x."""
        return self.rack.table[x][y], self.cocycle.matrix[x][y]

    def check_braid_equation(self):
        """(c (x) 1)(1 (x) c)(c (x) 1) = (1 (x) c)(c (x) 1)(1 (x) c) on basis triples."""
        n = self.rack.n
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    t = (x, y, z)
                    lhs = apply_braid_word(t, (0, 1, 0), self)
                    rhs = apply_braid_word(t, (1, 0, 1), self)
                    if lhs[0] != rhs[0] or not self.field.eq(lhs[1], rhs[1]):
                        return False, (x, y, z)
        return True, None

    # enveloping-group action: e_x . v_y = q[x][y] v_{x>y}

    def act(self, x: int, y: int, scalar):
        return self.rack.table[x][y], self.field.mul(scalar, self.cocycle.matrix[x][y])

    def act_inv(self, x: int, y: int, scalar):
        z = self.rack.inv_table[x][y]
        return z, self.field.mul(scalar, self.field.inv(self.cocycle.matrix[x][z]))

    def word_scalar(self, word, start: int):
        """Apply a word of signed rack letters [(x, +-1), ...] to v_start.

        The word acts as a composition, rightmost letter first.  Returns
        (end_label, scalar).
        """
        label = start
        scalar = self.field.one
        for x, sign in reversed(word):
            if sign > 0:
                label, scalar = self.act(x, label, scalar)
            else:
                label, scalar = self.act_inv(x, label, scalar)
        return label, scalar

    def reduce_mod(self, ideal: MaximalIdeal) -> "BraidedSpace":
        """Push an integral cyclotomic cocycle into the residue field."""
        if getattr(self.field, "characteristic", 0) != 0:
            raise ValueError("reduction starts from a characteristic-0 space")
        res = ideal.residue_field
        target = res if res.k > 1 else PrimeField(res.p)
        matrix = []
        for row in self.cocycle.matrix:
            out = []
            for v in row:
                r = reduce_cyclo(v, ideal)
                out.append(r if res.k > 1 else r.coeffs[0])
            matrix.append(out)
        cocycle = Cocycle(self.rack, target, matrix, name=f"{self.cocycle.name} mod {ideal.prime}")
        return BraidedSpace(self.rack, cocycle, name=f"{self.name}@p={ideal.prime}")

    def diagonal_data(self) -> "DynkinData":
        if not self.rack.is_abelian():
            raise CocycleError("diagonal data requires an abelian rack")
        n = self.rack.n
        q = self.cocycle.matrix
        f = self.field
        vertices = tuple(q[i][i] for i in range(n))
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                edges[(i, j)] = f.mul(q[i][j], q[j][i])
        return DynkinData(f, vertices, edges)

    def __repr__(self):
        return f"BraidedSpace({self.name}, dim={self.dim})"


def apply_braid_gen(t: tuple, i: int, space: BraidedSpace):
    """Hurwitz/braiding generator on a tuple: positions i, i+1."""
    x, y = t[i], t[i + 1]
    return t[:i] + (space.rack.table[x][y], x) + t[i + 2:], space.cocycle.matrix[x][y]


def apply_braid_word(t: tuple, word, space: BraidedSpace):
    """Apply c_{word[0]} o c_{word[1]} o ... (rightmost first) with scalars."""
    scalar = space.field.one
    for i in reversed(word):
        t, s = apply_braid_gen(t, i, space)
        scalar = space.field.mul(scalar, s)
    return t, scalar


def tetrahedron_module(eps: int, q, field=None) -> BraidedSpace:
    """The 4-dimensional braided space of the tetrahedral action table;
    entries are q at the non-twisted positions and eps*q at the others."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if field is None:
        field, (qval,) = unify_scalars([q])
    else:
        qval = field.coerce(q)
    if field.is_zero(qval):
        raise ValueError("q must be nonzero")
    rack = tetrahedron_rack()
    eps_val = field.from_int(eps)
    matrix = []
    for i in range(4):
        row = []
        for j in range(4):
            v = qval
            if i >= 1 and j >= 1 and i != j:
                v = field.mul(v, eps_val)
            row.append(v)
        matrix.append(row)
    name = f"tetra({eps},{q})"
    cocycle = Cocycle(rack, field, matrix, name=name)
    return BraidedSpace(rack, cocycle, name=name)


# -- characters and Yetter-Drinfeld realizations ----------------------------------------


class CharacterError(ValueError):
    pass


@dataclass
class Character:
    """Degree-one character of a subgroup, stored as a full value table."""

    subgroup: Subgroup
    values: dict  # Perm -> scalar
    field: object

    @staticmethod
    def from_generator_images(subgroup: Subgroup, images: dict, field=None) -> "Character":
        gens = {tuple(g): v for g, v in images.items()}
        for g in gens:
            if g not in subgroup.elements:
                raise CharacterError(f"generator {g} lies outside the subgroup")
        if field is None:
            field, coerced = unify_scalars(list(gens.values()))
        else:
            coerced = [field.coerce(v) for v in gens.values()]
        gens = dict(zip(gens.keys(), coerced))
        for g, v in gens.items():
            if order_of_unit(v) is None:
                raise CharacterError(f"character value at {g} is not a root of unity")
        n = len(next(iter(subgroup.elements)))
        identity = tuple(range(n))
        values = {identity: field.one}
        frontier = [identity]
        while frontier:
            new = []
            for h in frontier:
                vh = values[h]
                for g, vg in gens.items():
                    hg = perm_mul(h, g)
                    if hg not in values:
                        values[hg] = field.mul(vh, vg)
                        new.append(hg)
            frontier = new
        if len(values) != len(subgroup.elements):
            raise CharacterError(
                f"images generate only {len(values)} of {len(subgroup.elements)} elements"
            )
        # exhaustive well-definedness check over the multiplication table
        for a, va in values.items():
            for b, vb in values.items():
                if not field.eq(values[perm_mul(a, b)], field.mul(va, vb)):
                    raise CharacterError(f"images are inconsistent at {a} * {b}")
        return Character(subgroup, values, field)

    def __call__(self, g: Perm):
        g = tuple(g)
        try:
            return self.values[g]
        except KeyError:
            raise CharacterError(f"{g} is not in the character's domain") from None


@dataclass
class YDRealization:
    """M(g, chi): the induced Yetter-Drinfeld module with its extracted cocycle."""

    group: FiniteGroup
    base: Perm
    character: Character
    rack: Rack          # conjugacy-class rack, labels are the class elements
    transporters: tuple # sigma_x with sigma_x g sigma_x^{-1} = label x
    cocycle: Cocycle

    def braided_space(self) -> BraidedSpace:
        return BraidedSpace(self.rack, self.cocycle, realization=self,
                            name=f"M({self.base},chi) over {self.group.name}")

    def is_strong(self) -> bool:
        return self.group.class_generates(self.base)

    @property
    def dim(self) -> int:
        return self.rack.n


def yd_realize(group: FiniteGroup, g, chi_images: dict, field=None) -> YDRealization:
    """Build M(g, chi) from generator images of a degree-one character of C_G(g).

    chi_images maps centralizer elements (which must generate it) to root-of-
    unity scalars.  The basis is nu_x = sigma_x . v with the transporters
    sigma_x chosen lexicographically minimal, and the cocycle entry is
    q[x][y] = chi(sigma_{x>y}^{-1} x sigma_y).
    """
    g = tuple(g)
    if g not in group.elements:
        raise ValueError("base element not in group")
    cent = group.centralizer(g)
    chi = Character.from_generator_images(cent, chi_images, field)
    rack = conjugacy_class_rack(group, g, name=f"class({group.name},{g})")
    labels = rack.labels
    transporters = []
    for x in labels:
        sigma = min(h for h in group.sorted_elements() if perm_conj(h, g) == x)
        transporters.append(sigma)
    f = chi.field
    n = rack.n
    matrix = [[None] * n for _ in range(n)]
    for xi, x in enumerate(labels):
        for yi, y in enumerate(labels):
            zi = rack.table[xi][yi]
            w = perm_mul(perm_mul(perm_inv(transporters[zi]), x), transporters[yi])
            if w not in cent.elements:
                raise CharacterError("transporter arithmetic left the centralizer (bug)")
            matrix[xi][yi] = chi(w)
    cocycle = Cocycle(rack, f, matrix, name=f"chi-extracted")
    ok, witness = cocycle.validate()
    if not ok:
        raise CocycleError(f"extracted cocycle fails the identity at {witness}", witness)
    return YDRealization(group, g, chi, rack, tuple(transporters), cocycle)


def cocycles_cohomologous(a: Cocycle, b: Cocycle):
    """Diagonal rescaling lambda with b[x][y] = a[x][y] * l_y * l_{x>y}^{-1}, or None.

    Rescaling the basis v_x -> l_x v_x changes a cocycle exactly this way,
    so equivalence here means the two braided spaces are isomorphic via a
    diagonal map.  Propagates along the translation action, one seed per
    orbit, then verifies every entry.
    """
    if a.rack.table != b.rack.table:
        return None
    f = a.field
    if f is not b.field:
        return None
    n = a.rack.n
    table = a.rack.table
    lam = [None] * n
    for seed in range(n):
        if lam[seed] is not None:
            continue
        lam[seed] = f.one
        frontier = [seed]
        while frontier:
            new = []
            for y in frontier:
                for x in range(n):
                    z = table[x][y]
                    val = f.mul(lam[y], f.mul(b.matrix[x][y], f.inv(a.matrix[x][y])))
                    if lam[z] is None:
                        lam[z] = val
                        new.append(z)
                    elif not f.eq(lam[z], val):
                        return None
            frontier = new
    for x in range(n):
        for y in range(n):
            lhs = b.matrix[x][y]
            rhs = f.mul(a.matrix[x][y], f.mul(lam[y], f.inv(lam[table[x][y]])))
            if not f.eq(lhs, rhs):
                return None
    return lam


# -- diagonal type -----------------------------------------------------------------------


@dataclass
class DynkinData:
    field: object
    vertices: tuple          # q_ii per point
    edges: dict              # (i, j) i<j -> q_ij q_ji

    def edge(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.edges[(i, j)]

    def is_connected_pair(self, i: int, j: int) -> bool:
        return not self.field.eq(self.edge(i, j), self.field.one)


def cartan_exponents(data: DynkinData, search_depth: int = 8):
    """Cartan matrix for q_ij q_ji = q_ii^{a_ij}, a_ij in {0,-1,..,-depth}, or None."""
    n = len(data.vertices)
    f = data.field
    a = [[2 if i == j else None for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            target = data.edge(i, j)
            inv_qii = f.inv(data.vertices[i])
            power = f.one
            found = None
            for k in range(search_depth + 1):
                if f.eq(target, power):  # q_ii^{-k} == q_ij q_ji
                    found = -k
                    break
                power = f.mul(power, inv_qii)
            if found is None:
                return None
            a[i][j] = found
    return a


def charp_dynkin_lookup(data: DynkinData, p: int):
    """Match a diagonal braiding over characteristic p against the four
    finite families; returns 'A', 'B', 'C', 'D', or None."""
    f = data.field
    if getattr(f, "characteristic", 0) != p:
        raise ValueError("Dynkin data lives in a different characteristic")
    n = len(data.vertices)
    one = f.one
    minus = f.from_int(-1)
    if n == 2:
        pairs = [(0, 1), (1, 0)]
        for i, j in pairs:
            if f.eq(data.vertices[i], minus) and f.eq(data.vertices[j], one):
                edge = data.edge(0, 1)
                if p == 3 and f.eq(edge, minus):
                    return "A"
                if p == 5 and any(f.eq(edge, f.from_int(z)) for z in (2, 3)):
                    return "B"
                if p == 7 and any(f.eq(edge, f.from_int(z)) for z in (3, 5)):
                    return "C"
        return None
    if n == 3 and p == 2:
        # path 1 -- zeta -- a -- zeta^{-1} -- 1 with zeta^2 + zeta + 1 = 0
        for mid in range(3):
            outer = [k for k in range(3) if k != mid]
            i, j = outer
            if data.is_connected_pair(i, j):
                continue
            if not (f.eq(data.vertices[i], one) and f.eq(data.vertices[j], one)):
                continue
            zeta = data.edge(i, mid)
            zeta_inv = data.edge(mid, j)
            if f.is_zero(zeta) or order_in_field(f, zeta) != 3:
                continue
            if not f.eq(f.mul(zeta, zeta_inv), one):
                continue
            amid = data.vertices[mid]
            if any(f.eq(amid, c) for c in (one, zeta, f.inv(zeta))):
                return "D"
        return None
    return None
