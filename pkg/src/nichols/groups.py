"""Finite permutation groups with the normal-structure invariants used by
the screening pipeline: centralizers, conjugacy classes, derived and upper
central series, Fitting subgroup, p-cores, solvable radical, and minimal
normal subgroups.

Groups are materialized explicitly (capped at 10^6 elements, far above
anything screened here); there is no stabilizer-chain machinery, on
purpose.  Permutations are tuples of images of 0..n-1, composed as
functions: (a*b)(x) = a(b(x)).

Everything is immutable after construction; caches fill on first use and
are never mutated afterwards, so concurrent readers are fine.
"""

from __future__ import annotations

import re
from functools import reduce

from .scalars.gf import FiniteField, _is_prime

Perm = tuple[int, ...]

MAX_ORDER = 10**6


class BudgetExceeded(RuntimeError):
    pass


# -- permutation primitives ---------------------------------------------------


def perm_id(n: int) -> Perm:
    return tuple(range(n))


def perm_mul(a: Perm, b: Perm) -> Perm:
    """(a*b)(x) = a(b(x)): b acts first."""
    return tuple(a[x] for x in b)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_conj(a: Perm, b: Perm) -> Perm:
    """a b a^{-1}."""
    return perm_mul(perm_mul(a, b), perm_inv(a))


def perm_order(a: Perm) -> int:
    n = 1
    x = a
    e = perm_id(len(a))
    while x != e:
        x = perm_mul(x, a)
        n += 1
    return n


def perm_cycles(a: Perm, skip_fixed: bool = True) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    cycles = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        if len(cyc) > 1 or not skip_fixed:
            cycles.append(tuple(cyc))
    return cycles


def cycle_type(a: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in perm_cycles(a)), reverse=True))


def perm_from_cycles(cycles, n: int) -> Perm:
    out = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            out[x] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def cycle_str(a: Perm) -> str:
    cycles = perm_cycles(a)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_cycles(text: str, n: int | None = None) -> Perm:
    """Parse '(0 1)(2 3)' (spaces or commas inside cycles)."""
    groups = re.findall(r"\(([^()]*)\)", text)
    cycles = []
    maxpt = -1
    for g in groups:
        pts = [int(t) for t in re.split(r"[,\s]+", g.strip()) if t]
        if not pts:
            continue
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle {g!r}")
        cycles.append(tuple(pts))
        maxpt = max(maxpt, max(pts))
    if n is None:
        n = maxpt + 1
    return perm_from_cycles(cycles, n)


def mulclose(generators, cap: int = MAX_ORDER) -> set[Perm]:
    """Closure of a generator set under multiplication (BFS)."""
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    e = perm_id(len(gens[0]))
    elements = {e}
    frontier = [e]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = perm_mul(g, a)
                if b not in elements:
                    elements.add(b)
                    new.append(b)
                    if len(elements) > cap:
                        raise BudgetExceeded(f"group order exceeds cap {cap}")
        frontier = new
    return elements


def small_generating_set(elements: set[Perm]) -> list[Perm]:
    """Greedy generating set for a subgroup given as an element set."""
    if not elements:
        raise ValueError("empty element set")
    n = len(next(iter(elements)))
    e = perm_id(n)
    gens: list[Perm] = []
    closure = {e}
    for x in sorted(elements):
        if x not in closure:
            gens.append(x)
            closure = mulclose(gens)
            if len(closure) == len(elements):
                break
    return gens if gens else [e]


# -- the group class -----------------------------------------------------------


class FiniteGroup:
    def __init__(self, generators, name: str = "", degree: int | None = None, cap: int = MAX_ORDER):
        gens = [tuple(g) for g in generators]
        if degree is not None:
            gens = [tuple(g) + tuple(range(len(g), degree)) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        self.degree = len(gens[0])
        if any(len(g) != self.degree for g in gens):
            raise ValueError("generators act on different point sets")
        self.generators = gens
        self.name = name or "group"
        self._cap = cap
        self._elements: frozenset[Perm] | None = None
        self._classes = None
        self._center = None
        self._derived = None
        self._ncl_by_class = None

    # -- basics ---------------------------------------------------------------

    @property
    def identity(self) -> Perm:
        return perm_id(self.degree)

    @property
    def elements(self) -> frozenset[Perm]:
        if self._elements is None:
            self._elements = frozenset(mulclose(self.generators, self._cap))
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def __len__(self):
        return self.order

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def is_abelian(self) -> bool:
        return all(
            perm_mul(a, b) == perm_mul(b, a) for a in self.generators for b in self.generators
        )

    def __repr__(self):
        return f"FiniteGroup({self.name}, degree={self.degree})"

    # -- classes and centralizers ----------------------------------------------

    def conjugacy_class(self, g: Perm) -> frozenset[Perm]:
        g = tuple(g)
        if g not in self.elements:
            raise ValueError("element not in group")
        orbit = {g}
        frontier = [g]
        while frontier:
            new = []
            for x in frontier:
                for h in self.generators:
                    y = perm_conj(h, x)
                    if y not in orbit:
                        orbit.add(y)
                        new.append(y)
            frontier = new
        return frozenset(orbit)

    def conjugacy_classes(self) -> list[frozenset[Perm]]:
        if self._classes is None:
            seen: set[Perm] = set()
            classes = []
            for g in self.sorted_elements():
                if g not in seen:
                    cls = self.conjugacy_class(g)
                    seen |= cls
                    classes.append(cls)
            self._classes = classes
        return self._classes

    def centralizer(self, g: Perm) -> "Subgroup":
        g = tuple(g)
        if g not in self.elements:
            raise ValueError("element not in group")
        elems = frozenset(x for x in self.elements if perm_mul(x, g) == perm_mul(g, x))
        return Subgroup(self, elems)

    def center(self) -> "Subgroup":
        if self._center is None:
            gens = self.generators
            elems = frozenset(
                x
                for x in self.elements
                if all(perm_mul(x, g) == perm_mul(g, x) for g in gens)
            )
            self._center = Subgroup(self, elems)
        return self._center

    def class_generates(self, g: Perm) -> bool:
        cls = self.conjugacy_class(g)
        return len(mulclose(sorted(cls), self._cap)) == self.order

    # -- subgroup construction ---------------------------------------------------

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, frozenset(tuple(x) for x in elements))

    def generated_subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, frozenset(mulclose([tuple(g) for g in gens], self._cap)))

    def normal_closure(self, seed) -> "Subgroup":
        """Smallest normal subgroup containing the seed elements."""
        closed = set(mulclose([tuple(g) for g in seed], self._cap))
        while True:
            extra = []
            for h in self.generators:
                for x in list(closed):
                    y = perm_conj(h, x)
                    if y not in closed:
                        extra.append(y)
            if not extra:
                break
            closed = set(mulclose(sorted(closed | set(extra)), self._cap))
        return Subgroup(self, frozenset(closed), normal=True)

    # -- derived series ----------------------------------------------------------

    def derived_subgroup(self) -> "Subgroup":
        if self._derived is None:
            comms = {
                perm_mul(perm_mul(a, b), perm_inv(perm_mul(b, a)))
                for a in self.generators
                for b in self.generators
            }
            self._derived = self.normal_closure(sorted(comms | {self.identity}))
        return self._derived

    def derived_series(self) -> list["Subgroup"]:
        series = [Subgroup(self, self.elements, normal=True)]
        while True:
            last = series[-1]
            nxt = last.as_group().derived_subgroup()
            nxt_sub = Subgroup(self, nxt.elements)
            if len(nxt_sub.elements) == len(last.elements):
                break
            series.append(nxt_sub)
            if len(nxt_sub.elements) == 1:
                break
        return series

    def is_solvable(self) -> bool:
        return len(self.derived_series()[-1].elements) == 1

    # -- upper central series ------------------------------------------------------

    def upper_central_series(self) -> list["Subgroup"]:
        series = [Subgroup(self, frozenset({self.identity}), normal=True)]
        while True:
            z = series[-1].elements
            nxt = frozenset(
                x
                for x in self.elements
                if all(
                    perm_mul(perm_mul(x, g), perm_inv(perm_mul(g, x))) in z
                    for g in self.generators
                )
            )
            if len(nxt) == len(z):
                break
            series.append(Subgroup(self, nxt, normal=True))
        return series

    def hypercenter(self) -> "Subgroup":
        return self.upper_central_series()[-1]

    def is_nilpotent(self) -> bool:
        return len(self.hypercenter().elements) == self.order

    # -- Fitting machinery ----------------------------------------------------------

    def _class_normal_closures(self) -> list[tuple[frozenset[Perm], "Subgroup"]]:
        if self._ncl_by_class is None:
            out = []
            for cls in self.conjugacy_classes():
                if len(cls) == 1 and self.identity in cls:
                    continue
                rep = min(cls)
                out.append((cls, self.normal_closure([rep])))
            self._ncl_by_class = out
        return self._ncl_by_class

    def p_core(self, p: int) -> "Subgroup":
        """O_p(G): union of the classes whose normal closure is a p-group."""
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        members = {self.identity}
        for cls, ncl in self._class_normal_closures():
            if _is_prime_power_order(len(ncl.elements), p):
                members |= cls
        return Subgroup(self, frozenset(mulclose(sorted(members), self._cap)), normal=True)

    def fitting_subgroup(self) -> "Subgroup":
        members = {self.identity}
        for p in _prime_divisors(self.order):
            members |= self.p_core(p).elements
        return Subgroup(self, frozenset(mulclose(sorted(members), self._cap)), normal=True)

    def solvable_radical(self) -> "Subgroup":
        members = {self.identity}
        for cls, ncl in self._class_normal_closures():
            if ncl.as_group().is_solvable():
                members |= cls
        return Subgroup(self, frozenset(mulclose(sorted(members), self._cap)), normal=True)

    def satisfies_radical_hypothesis(self) -> bool:
        """Solvable radical differs from the hypercenter."""
        return self.solvable_radical().elements != self.hypercenter().elements

    def minimal_normal_subgroups(self, budget: int = 10**5) -> list["Subgroup"]:
        """Minimal elements among normal closures of single classes."""
        if self.order > budget:
            raise BudgetExceeded(f"group order {self.order} exceeds budget {budget}")
        closures = {}
        for cls, ncl in self._class_normal_closures():
            closures[ncl.elements] = ncl
        minimal = []
        for elems, sub in closures.items():
            if len(elems) == 1:
                continue
            # minimal iff no other nontrivial class closure sits properly inside
            if not any(1 < len(other) < len(elems) and other < elems for other in closures):
                minimal.append(sub)
        return sorted(minimal, key=lambda s: (len(s.elements), sorted(s.elements)))


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


def _is_prime_power_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class Subgroup:
    """A subgroup captured as an element subset of a parent group."""

    def __init__(self, parent: FiniteGroup, elements: frozenset[Perm], normal: bool | None = None):
        self.parent = parent
        self.elements = elements
        self._normal = normal
        self._group: FiniteGroup | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self.elements

    def __eq__(self, other):
        if isinstance(other, Subgroup):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def as_group(self) -> FiniteGroup:
        if self._group is None:
            gens = small_generating_set(set(self.elements))
            g = FiniteGroup(gens, name=f"{self.parent.name}-sub{self.order}")
            g._elements = self.elements
            self._group = g
        return self._group

    def is_normal(self) -> bool:
        if self._normal is None:
            self._normal = all(
                perm_conj(g, x) in self.elements
                for g in self.parent.generators
                for x in self.elements
            )
        return self._normal

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


# -- named families --------------------------------------------------------------


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return FiniteGroup([()], name="S1", degree=max(n, 1))
    gens = [perm_from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(perm_from_cycles([tuple(range(n))], n))
    return FiniteGroup(gens, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return FiniteGroup([perm_id(max(n, 1))], name=f"A{n}")
    gens = [perm_from_cycles([(0, 1, 2)], n)]
    if n > 3:
        if n % 2 == 1:
            gens.append(perm_from_cycles([tuple(range(n))], n))
        else:
            gens.append(perm_from_cycles([tuple(range(1, n))], n))
    return FiniteGroup(gens, name=f"A{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([(0,)], name="C1")
    return FiniteGroup([perm_from_cycles([tuple(range(n))], n)], name=f"C{n}")


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, acting on order/2 points."""
    if order % 2 or order < 2:
        raise ValueError("dihedral groups here have even order >= 2")
    if order == 2:
        return FiniteGroup([(1, 0)], name="D2")
    if order == 4:
        # Klein four-group; 2 points cannot carry it faithfully
        return FiniteGroup([(1, 0, 2, 3), (0, 1, 3, 2)], name="D4")
    m = order // 2
    rot = perm_from_cycles([tuple(range(m))], m)
    refl = tuple((m - i) % m for i in range(m))
    return FiniteGroup([rot, refl], name=f"D{order}")


def affine_group(q: int, d: int | tuple) -> FiniteGroup:
    """F_q (additive) extended by multiplication by d: the group F_q x| <d>.

    Acts on the q field elements; point labels follow the field's canonical
    element order.
    """
    field, delem = _field_and_scalar(q, d)
    points = sorted(field.elements(), key=lambda e: e.coeffs)
    index = {e.coeffs: i for i, e in enumerate(points)}
    gens = []
    for i in range(field.k):
        shift = field.from_coeffs(tuple(1 if j == i else 0 for j in range(field.k)))
        gens.append(tuple(index[(x + shift).coeffs] for x in points))
    gens.append(tuple(index[(delem * x).coeffs] for x in points))
    return FiniteGroup(gens, name=f"aff({q},{_scalar_label(delem)})")


def _field_and_scalar(q: int, d):
    factors = _prime_divisors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    k = 0
    qq = q
    while qq > 1:
        qq //= p
        k += 1
    field = FiniteField(p, k)
    if isinstance(d, int):
        if k == 1:
            delem = field.from_int(d)
        else:
            # integer codes enumerate the canonical element order
            coeffs = []
            c = d
            for _ in range(k):
                coeffs.append(c % p)
                c //= p
            delem = field.from_coeffs(tuple(coeffs))
    else:
        delem = field.from_coeffs(tuple(d))
    if delem.is_zero():
        raise ValueError("multiplier must be nonzero")
    return field, delem


def _scalar_label(delem) -> str:
    if delem.field.k == 1:
        return str(delem.coeffs[0])
    code = 0
    for c in reversed(delem.coeffs):
        code = code * delem.field.p + c
    return str(code)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n, m = g.degree, h.degree
    gens = []
    for a in g.generators:
        gens.append(tuple(a) + tuple(n + i for i in range(m)))
    for b in h.generators:
        gens.append(tuple(range(n)) + tuple(n + x for x in b))
    return FiniteGroup(gens, name=f"{g.name}x{h.name}")


def parse_group(text: str) -> FiniteGroup:
    """Group literals: S4, A5, C12, D8, aff(5,2), perm:(0 1)(2 3),(0 1 2 3),
    and direct products joined with '*'."""
    text = text.strip()
    if text.startswith("perm:"):
        body = text[len("perm:"):]
        parts = _split_perm_list(body)
        perms = [parse_cycles(p) for p in parts]
        n = max(len(p) for p in perms)
        perms = [tuple(p) + tuple(range(len(p), n)) for p in perms]
        return FiniteGroup(perms, name=text)
    if "*" in text:
        return reduce(direct_product, [parse_group(t) for t in text.split("*")])
    m = re.fullmatch(r"([SACD])(\d+)", text, re.IGNORECASE)
    if m:
        kind, n = m.group(1).upper(), int(m.group(2))
        if kind == "S":
            return symmetric_group(n)
        if kind == "A":
            return alternating_group(n)
        if kind == "C":
            return cyclic_group(n)
        return dihedral_group(n)
    m = re.fullmatch(r"aff\((\d+)\s*,\s*(\d+)\)", text)
    if m:
        return affine_group(int(m.group(1)), int(m.group(2)))
    raise ValueError(f"unrecognized group literal {text!r}")


def _split_perm_list(body: str) -> list[str]:
    """Split 'perm:' payload on commas that sit outside parentheses."""
    parts = []
    depth = 0
    cur = []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]
