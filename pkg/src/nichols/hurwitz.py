"""Hurwitz action of braid groups on rack powers, the degree-2 determinant
identity for odd orbits, and the reduction-mod-ideal search for certificates
of infinite dimension.

The braid generator t_i sends (..., x_i, x_{i+1}, ...) to
(..., x_i > x_{i+1}, x_i, ...).  Orbits are enumerated by BFS with the
lexicographically smallest tuple as representative, so output order is
deterministic.

A certificate packages (orbit, prime, maximal ideal, support element,
scalar): the scalar s = 1 + action of g^{|H|} x^{-|H|} on the x-line is
nonzero yet lands in the ideal, which forces the Nichols algebra to be
infinite-dimensional.  Certificates embed enough context to be replayed
from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braided import BraidedSpace, field_conductor
from .groups import Perm, cycle_str, perm_mul
from .linalg import det_dense, rank_of_rows
from .literals import format_scalar, parse_scalar
from .racks import Rack
from .scalars.cyclo import CycloField
from .scalars.ideals import MaximalIdeal, ReductionError, maximal_ideals_over, parse_poly, poly_str, reduce_cyclo
from .scalars.rationals import QQ
from .scalars.units import order_of_unit


class HurwitzBudgetError(RuntimeError):
    pass


class ObstructionPreconditionError(ValueError):
    def __init__(self, failures):
        super().__init__("preconditions failed: " + ", ".join(failures))
        self.failures = list(failures)


@dataclass(frozen=True)
class HurwitzOrbit:
    arity: int
    tuples: tuple[tuple[int, ...], ...]  # sorted; tuples[0] is the representative

    @property
    def size(self) -> int:
        return len(self.tuples)

    @property
    def rep(self) -> tuple[int, ...]:
        return self.tuples[0]

    def support(self) -> tuple[int, ...]:
        return tuple(sorted({x for t in self.tuples for x in t}))

    def __repr__(self):
        return f"HurwitzOrbit(n={self.arity}, size={self.size}, rep={self.rep})"


def braid_move(rack: Rack, t: tuple, i: int) -> tuple:
    x, y = t[i], t[i + 1]
    return t[:i] + (rack.table[x][y], x) + t[i + 2:]


def braid_move_inv(rack: Rack, t: tuple, i: int) -> tuple:
    a, b = t[i], t[i + 1]
    return t[:i] + (b, rack.inv_table[b][a]) + t[i + 2:]


def hurwitz_orbits(rack: Rack, n: int, budget: int = 10**8) -> list[HurwitzOrbit]:
    """Partition X^n into Hurwitz orbits (sorted by size, then representative)."""
    if n < 2:
        raise ValueError("Hurwitz action needs arity >= 2")
    total = rack.n**n
    if total > budget:
        raise HurwitzBudgetError(f"{rack.n}^{n} tuples exceed budget {budget}")
    seen: set[tuple] = set()
    orbits = []
    from itertools import product

    for start in product(range(rack.n), repeat=n):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            new = []
            for t in frontier:
                for i in range(n - 1):
                    for u in (braid_move(rack, t, i), braid_move_inv(rack, t, i)):
                        if u not in orbit:
                            orbit.add(u)
                            new.append(u)
            frontier = new
        seen |= orbit
        orbits.append(HurwitzOrbit(n, tuple(sorted(orbit))))
    return sorted(orbits, key=lambda h: (h.size, h.rep))


def orbit_of_tuple(rack: Rack, start: tuple) -> HurwitzOrbit:
    orbit = {tuple(start)}
    frontier = [tuple(start)]
    n = len(start)
    while frontier:
        new = []
        for t in frontier:
            for i in range(n - 1):
                for u in (braid_move(rack, t, i), braid_move_inv(rack, t, i)):
                    if u not in orbit:
                        orbit.add(u)
                        new.append(u)
        frontier = new
    return HurwitzOrbit(n, tuple(sorted(orbit)))


# -- degrees ------------------------------------------------------------------------


def degree_inner_perm(rack: Rack, orbit: HurwitzOrbit) -> Perm:
    """Image of the orbit degree in Inn X: phi_{x_1} o ... o phi_{x_n}."""
    perm = tuple(range(rack.n))
    for x in reversed(orbit.rep):
        perm = perm_mul(rack.table[x], perm)
    return perm


def degree_group_element(space: BraidedSpace, orbit: HurwitzOrbit) -> Perm:
    """Orbit degree inside the realization group (product of labels)."""
    real = space.realization
    if real is None:
        raise ValueError("braided space carries no group realization")
    labels = [real.rack.labels[i] for i in orbit.rep]
    out = labels[0]
    for x in labels[1:]:
        out = perm_mul(out, x)
    return out


def degree_class_bound(space: BraidedSpace, orbit: HurwitzOrbit) -> int:
    """Size of the degree's conjugacy class: exact in the realization group,
    otherwise a lower bound through the surjection onto Inn X."""
    real = space.realization
    if real is not None:
        g = degree_group_element(space, orbit)
        return len(real.group.conjugacy_class(g))
    inn = space.rack.inner_group()
    return len(inn.conjugacy_class(degree_inner_perm(space.rack, orbit)))


def degree_scalar(space: BraidedSpace, orbit: HurwitzOrbit, x: int):
    """Scalar of g^{|H|} x^{-|H|} acting on the x-line (x in supp H)."""
    word = []
    for _ in range(orbit.size):
        word.extend((a, +1) for a in orbit.rep)
    word.extend((x, -1) for _ in range(orbit.size))
    end, scalar = space.word_scalar(word, x)
    if end != x:
        raise RuntimeError("degree word did not stabilize the support line (bug)")
    return scalar


def delta_det(space: BraidedSpace, orbit: HurwitzOrbit):
    """det of (id + c) restricted to the orbit block, via the odd-orbit
    scalar identity; checks independence of the support point."""
    if orbit.arity != 2:
        raise ValueError("the determinant identity is a degree-2 statement")
    if orbit.size % 2 == 0:
        raise ValueError("determinant identity requires an odd orbit")
    f = space.field
    values = []
    for x in orbit.support():
        values.append(f.add(f.one, degree_scalar(space, orbit, x)))
    first = values[0]
    for v in values[1:]:
        if not f.eq(v, first):
            raise RuntimeError("odd-orbit scalar depends on the support point (bug)")
    return first


def delta_matrix(space: BraidedSpace, orbit: HurwitzOrbit):
    """Dense matrix of id + c on the orbit block (rows/cols index tuples)."""
    if orbit.arity != 2:
        raise ValueError("delta acts on degree 2")
    f = space.field
    index = {t: i for i, t in enumerate(orbit.tuples)}
    m = [[f.zero] * orbit.size for _ in range(orbit.size)]
    for j, (a, b) in enumerate(orbit.tuples):
        m[j][j] = f.add(m[j][j], f.one)
        target = (space.rack.table[a][b], a)
        m[index[target]][j] = f.add(m[index[target]][j], space.cocycle.matrix[a][b])
    return m


def rank_bound_check(space: BraidedSpace, orbit: HurwitzOrbit):
    """(rank, det, bounds_hold) for delta on an odd orbit block."""
    m = delta_matrix(space, orbit)
    f = space.field
    rows = [{j: v for j, v in enumerate(row) if not f.is_zero(v)} for row in m]
    rank = rank_of_rows(f, rows)
    det = det_dense(f, m)
    ok = rank in (orbit.size - 1, orbit.size) and (
        (rank == orbit.size) == (not f.is_zero(det))
    )
    return rank, det, ok


# -- certificates ---------------------------------------------------------------------


@dataclass
class InfinitenessCertificate:
    rack_table: tuple
    cocycle_literals: tuple      # n x n scalar literal strings
    conductor: int
    orbit: tuple                 # tuples of rack indices
    x: int                       # support element index
    prime: int
    ideal_factor: tuple          # modulus polynomial of Phi_N mod p
    scalar_literal: str          # s = 1 + action scalar, as a literal
    degree: str                  # degree permutation, printable form
    class_bound: int

    def to_json(self) -> dict:
        return {
            "orbit": [list(t) for t in self.orbit],
            "degree": self.degree,
            "prime": self.prime,
            "conductor": self.conductor,
            "ideal_factor": poly_str(self.ideal_factor),
            "x": self.x,
            "scalar": self.scalar_literal,
            "class_bound": self.class_bound,
            "rack": [list(r) for r in self.rack_table],
            "cocycle": [list(r) for r in self.cocycle_literals],
        }

    @staticmethod
    def from_json(data: dict) -> "InfinitenessCertificate":
        try:
            return InfinitenessCertificate(
                rack_table=tuple(tuple(r) for r in data["rack"]),
                cocycle_literals=tuple(tuple(r) for r in data["cocycle"]),
                conductor=int(data["conductor"]),
                orbit=tuple(tuple(t) for t in data["orbit"]),
                x=int(data["x"]),
                prime=int(data["prime"]),
                ideal_factor=tuple(parse_poly(data["ideal_factor"], int(data["prime"]))),
                scalar_literal=data["scalar"],
                degree=data.get("degree", ""),
                class_bound=int(data.get("class_bound", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateParseError(str(exc)) from exc


class CertificateParseError(ValueError):
    pass


def _space_field(conductor: int):
    return QQ if conductor <= 2 else CycloField(conductor)


def space_from_certificate(cert: InfinitenessCertificate) -> BraidedSpace:
    from .braided import Cocycle

    rack = Rack(cert.rack_table)
    f = _space_field(cert.conductor)
    matrix = [[f.coerce(parse_scalar(lit)) for lit in row] for row in cert.cocycle_literals]
    cocycle = Cocycle(rack, f, matrix, name="certified")
    return BraidedSpace(rack, cocycle)


def default_primes(space: BraidedSpace) -> list[int]:
    """Primes dividing the order of any cocycle value, plus 2, 3, 5, 7."""
    primes = {2, 3, 5, 7}
    for row in space.cocycle.matrix:
        for v in row:
            order = order_of_unit(v)
            if order:
                d = 2
                n = order
                while d * d <= n:
                    if n % d == 0:
                        primes.add(d)
                        while n % d == 0:
                            n //= d
                    d += 1
                if n > 1:
                    primes.add(n)
    return sorted(primes)


def obstruction_preconditions(space: BraidedSpace) -> list[str]:
    failures = []
    if getattr(space.field, "characteristic", 0) != 0:
        failures.append("base field must have characteristic 0")
    if space.rack.n < 3:
        failures.append("support must have at least 3 elements")
    if space.realization is not None:
        if not space.realization.is_strong():
            failures.append("support class does not generate the realization group")
    else:
        if not space.rack.is_indecomposable():
            failures.append("rack must be indecomposable (support a single class)")
    return failures


def obstruction_search(space: BraidedSpace, primes=None, budget: int = 10**6):
    """Scan odd degree-2 orbits x primes x ideals for infiniteness certificates.

    Returns all certificates found, in canonical (orbit, prime, ideal) order.
    Raises ObstructionPreconditionError if the lemma's standing hypotheses
    fail for this space.
    """
    failures = obstruction_preconditions(space)
    if failures:
        raise ObstructionPreconditionError(failures)
    if primes is None:
        primes = default_primes(space)
    f = space.field
    conductor = field_conductor(f)
    certificates = []
    for orbit in hurwitz_orbits(space.rack, 2, budget):
        if orbit.size % 2 == 0:
            continue
        class_bound = degree_class_bound(space, orbit)
        if class_bound < 3:
            continue
        x = orbit.support()[0]
        s = f.add(f.one, degree_scalar(space, orbit, x))
        if f.is_zero(s):
            continue
        for p in primes:
            for ideal in maximal_ideals_over(conductor, p):
                try:
                    image = reduce_cyclo(s, ideal)
                except ReductionError:
                    continue
                if not image.is_zero():
                    continue
                if space.realization is not None:
                    degree_repr = cycle_str(degree_group_element(space, orbit))
                else:
                    degree_repr = cycle_str(degree_inner_perm(space.rack, orbit))
                certificates.append(
                    InfinitenessCertificate(
                        rack_table=space.rack.table,
                        cocycle_literals=tuple(
                            tuple(format_scalar(v) for v in row)
                            for row in space.cocycle.matrix
                        ),
                        conductor=conductor,
                        orbit=orbit.tuples,
                        x=x,
                        prime=p,
                        ideal_factor=ideal.factor,
                        scalar_literal=format_scalar(s),
                        degree=degree_repr,
                        class_bound=class_bound,
                    )
                )
    return certificates


def check_certificate(cert: InfinitenessCertificate) -> tuple[bool, list[str]]:
    """Recompute every certificate condition from scratch."""
    problems = []
    try:
        space = space_from_certificate(cert)
    except Exception as exc:  # malformed table or literals
        return False, [f"reconstruction failed: {exc}"]
    f = space.field
    failures = obstruction_preconditions(space)
    problems.extend(failures)
    if len(cert.orbit) % 2 == 0:
        problems.append("orbit length is even")
    regenerated = orbit_of_tuple(space.rack, cert.orbit[0])
    if regenerated.tuples != tuple(sorted(cert.orbit)):
        problems.append("orbit is not closed under the braid moves")
        return False, problems
    if cert.x not in regenerated.support():
        problems.append("marked element x is not in the orbit support")
        return False, problems
    bound = degree_class_bound(space, regenerated)
    if bound < 3:
        problems.append(f"degree class bound {bound} < 3")
    if bound != cert.class_bound and cert.class_bound:
        problems.append(f"stated class bound {cert.class_bound} != recomputed {bound}")
    s = f.add(f.one, degree_scalar(space, regenerated, cert.x))
    stated = f.coerce(parse_scalar(cert.scalar_literal))
    if not f.eq(s, stated):
        problems.append("stated scalar disagrees with the recomputed one")
    if f.is_zero(s):
        problems.append("scalar is zero")
    ideals = [
        i for i in maximal_ideals_over(cert.conductor, cert.prime) if i.factor == cert.ideal_factor
    ]
    if not ideals:
        problems.append("ideal factor does not divide the cyclotomic polynomial mod p")
    else:
        try:
            if not reduce_cyclo(s, ideals[0]).is_zero():
                problems.append("scalar does not reduce to zero in the ideal")
        except ReductionError as exc:
            problems.append(f"scalar is not integral at p: {exc}")
    return not problems, problems
