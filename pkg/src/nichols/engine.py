"""Exact graded dimensions of Nichols algebras via the quantum symmetrizer.

Two engines compute dim B^n = rank of Omega_n on the n-th tensor power:

* direct: assembles Omega_n = sum over S_n of the Matsumoto braid lifts,
  one Hurwitz block of X^n at a time (the symmetrizer preserves blocks),
  and ranks each block.  Exponential in n; used at low degree and as the
  cross-check oracle.

* incremental: uses the coset factorization
      Omega_n = (Omega_{n-1} (x) id) . beta_n,
      beta_n = sum_{i=1..n} c_{n-1} c_{n-2} ... c_i   (empty product = id),
  so that with a monomial lift L of a basis of B^{n-1} the number
  dim B^n equals the rank of (coord_{n-1} (x) id) . beta_n restricted to
  L (x) V: the kernel of Omega_{n-1} tensored with V dies in B^{n-1} (x) V,
  and nothing else does.  Row reduction doubles as the monomial-reduction
  oracle for the next degree, memoized per monomial.

Both engines are exact over Q, cyclotomic fields, and finite fields.
Hilbert series stop as soon as some d_n = 0: the algebra is generated in
degree one, so all higher components vanish.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import factorial

from .braided import BraidedSpace
from .groups import perm_mul
from .hurwitz import HurwitzBudgetError, hurwitz_orbits
from .linalg import Echelon, SolvingEchelon, rank_of_rows


class EngineBudgetError(RuntimeError):
    pass


# -- Matsumoto lifts ------------------------------------------------------------


def matsumoto_word(perm) -> tuple[int, ...]:
    """A reduced braid word for the permutation (operator order: leftmost
    factor applied last).  Bubble-sorting the one-line notation gives a word
    of length = the inversion number, hence reduced."""
    v = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(v) - 1):
            if v[i] > v[i + 1]:
                v[i], v[i + 1] = v[i + 1], v[i]
                word.append(i)
                changed = True
    return tuple(reversed(word))


@lru_cache(maxsize=None)
def _symmetric_group_elements(n: int) -> tuple:
    from itertools import permutations

    return tuple(permutations(range(n)))


def apply_matsumoto(space: BraidedSpace, perm, t: tuple):
    """M_n(perm) applied to a basis tuple: (target_tuple, scalar)."""
    from .braided import apply_braid_word

    return apply_braid_word(t, matsumoto_word(perm), space)


# -- direct engine ----------------------------------------------------------------


def _block_symmetrizer_rank(space: BraidedSpace, tuples: tuple, n: int) -> int:
    """Rank of Omega_n on one Hurwitz block, by layered BFS over S_n."""
    f = space.field
    rack = space.rack
    q = space.cocycle.matrix
    index = {t: i for i, t in enumerate(tuples)}
    size = len(tuples)
    # rows[src] accumulates sum over permutations of scalar at target
    rows = [dict() for _ in range(size)]

    identity = tuple(range(n))
    # actions[perm][src] = (tgt_index, scalar)
    layer = {identity: [(i, f.one) for i in range(size)]}
    seen = {identity}
    while layer:
        for perm, action in layer.items():
            for src, (tgt, scalar) in enumerate(action):
                row = rows[src]
                cur = row.get(tgt)
                row[tgt] = scalar if cur is None else f.add(cur, scalar)
        next_layer = {}
        for perm, action in layer.items():
            for i in range(n - 1):
                new_perm = tuple(
                    (i + 1 if v == i else i if v == i + 1 else v) for v in perm
                )
                if new_perm in seen or new_perm in next_layer:
                    continue
                # length additivity: new_perm is one layer further out
                if _inversions(new_perm) != _inversions(perm) + 1:
                    continue
                new_action = []
                for tgt, scalar in action:
                    t = tuples[tgt]
                    x, y = t[i], t[i + 1]
                    nt = t[:i] + (rack.table[x][y], x) + t[i + 2:]
                    new_action.append((index[nt], f.mul(scalar, q[x][y])))
                next_layer[new_perm] = new_action
                seen.add(new_perm)
        layer = next_layer
    ech = Echelon(f)
    for row in rows:
        clean = {k: v for k, v in row.items() if not f.is_zero(v)}
        ech.add(clean)
    return ech.rank


def _inversions(perm) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def symmetrizer_rank_direct(space: BraidedSpace, n: int, budget: int = 4 * 10**6) -> int:
    """dim B^n by direct blockwise symmetrizer rank.

    budget caps |block| * n! per block (time) and |X|^n overall.
    """
    if n == 0:
        return 1
    if n == 1:
        return space.dim
    total = space.dim**n
    if total > budget:
        raise EngineBudgetError(f"{space.dim}^{n} tuples exceed budget {budget}")
    fact = factorial(n)
    rank = 0
    for orbit in hurwitz_orbits(space.rack, n, budget):
        if orbit.size * fact > budget:
            raise EngineBudgetError(
                f"block of size {orbit.size} at degree {n} exceeds budget {budget}"
            )
        rank += _block_symmetrizer_rank(space, orbit.tuples, n)
    return rank


# -- incremental engine --------------------------------------------------------------


class IncrementalEngine:
    """Degree-by-degree symmetrizer ranks with memoized monomial reduction."""

    def __init__(self, space: BraidedSpace, memo_cap: int = 2**24):
        self.space = space
        self.field = space.field
        self.memo_cap = memo_cap
        n1 = [(x,) for x in range(space.dim)]
        self.basis: list[list[tuple]] = [[()], n1]  # degree 0 and 1 lifts
        self.basis_index: list[dict] = [{(): 0}, {m: i for i, m in enumerate(n1)}]
        self.echelons: list = [None, None]  # degree-1 coords are unit vectors
        self.memos: list[dict] = [{}, {}]
        self.dims = [1, space.dim]

    # `coords` returns {basis_position: scalar} at the monomial's own degree.

    def coords(self, m: tuple) -> dict:
        k = len(m)
        if k == 1:
            return {self.basis_index[1][m]: self.field.one}
        memo = self.memos[k]
        hit = memo.get(m)
        if hit is not None:
            return hit
        vec = self._expand(m)
        combo = self.echelons[k].express(vec)
        if combo is None:
            raise RuntimeError("monomial failed to reduce (bug: image not spanned)")
        if len(memo) >= self.memo_cap:
            memo.clear()
        memo[m] = combo
        return combo

    def _expand(self, m: tuple) -> dict:
        """E(m) = (coord_{k-1} (x) id)(beta_k (m)) as {(pos, letter): scalar}."""
        f = self.field
        q = self.space.cocycle.matrix
        table = self.space.rack.table
        k = len(m)
        vec: dict = {}
        terms = [(m, f.one)]
        for j in range(k - 1):
            # c_{k-1}...c_{j+1}c_j pushes m[j] to the end, braiding across
            x = m[j]
            scalar = f.one
            prefix = list(m[:j])
            for t in range(j + 1, k):
                scalar = f.mul(scalar, q[x][m[t]])
                prefix.append(table[x][m[t]])
            prefix.append(x)
            terms.append((tuple(prefix), scalar))
        for t, scalar in terms:
            head, last = t[:-1], t[-1]
            for pos, coeff in self.coords(head).items():
                key = (pos, last)
                cur = vec.get(key, f.zero)
                new = f.add(cur, f.mul(scalar, coeff))
                if f.is_zero(new):
                    vec.pop(key, None)
                else:
                    vec[key] = new
        return vec

    def step(self) -> int:
        """Compute the next degree's dimension; extends internal state."""
        f = self.field
        k = len(self.dims)  # degree being computed
        ech = SolvingEchelon(f)
        self.echelons.append(ech)
        self.memos.append({})
        new_basis: list[tuple] = []
        prev = self.basis[k - 1]
        for head in prev:
            for x in range(self.space.dim):
                m = head + (x,)
                vec = self._expand(m)
                if vec and ech.add_basis(vec, m):
                    new_basis.append(m)
        self.basis.append(new_basis)
        self.basis_index.append({m: i for i, m in enumerate(new_basis)})
        self.dims.append(len(new_basis))
        return len(new_basis)


def symmetrizer_rank_incremental(space: BraidedSpace, n: int, state: IncrementalEngine | None = None) -> int:
    """dim B^n via the incremental engine (state reusable across degrees)."""
    if state is None:
        state = IncrementalEngine(space)
    while len(state.dims) <= n:
        state.step()
    return state.dims[n]


# -- Hilbert series -------------------------------------------------------------------


@dataclass
class HilbertReport:
    rack: str
    cocycle: str
    field: str
    dims: list[int]
    verdict: str                 # "finite" | "unknown"
    total: int | None
    top_degree: int | None
    cap: int
    engine_per_degree: list[str] = dc_field(default_factory=list)
    wall_ms: int = 0

    def to_json(self) -> dict:
        out = {
            "rack": self.rack,
            "cocycle": self.cocycle,
            "field": self.field,
            "dims": list(self.dims),
            "verdict": self.verdict,
            "engine_per_degree": list(self.engine_per_degree),
            "wall_ms": self.wall_ms,
        }
        if self.verdict == "finite":
            out["total"] = self.total
            out["top_degree"] = self.top_degree
        else:
            out["cap"] = self.cap
        return out


DEFAULT_CAP = 20


def hilbert_series(
    space: BraidedSpace,
    cap: int = DEFAULT_CAP,
    engine: str = "auto",
    direct_budget: int = 4 * 10**6,
    memo_cap: int = 2**24,
) -> HilbertReport:
    """Per-degree dimensions d_0, d_1, ... up to cap, stopping early at the
    first zero (the algebra is generated in degree one)."""
    from .literals import format_field

    if cap < 1:
        raise ValueError("cap must be >= 1")
    start = time.monotonic()
    dims = [1, space.dim]
    engines = ["-", "-"]
    state = None
    verdict, total, top = "unknown", None, None
    degree = 2
    while degree <= cap:
        if engine == "direct":
            d = symmetrizer_rank_direct(space, degree, direct_budget)
            engines.append("direct")
        elif engine == "incremental":
            if state is None:
                state = IncrementalEngine(space, memo_cap)
            d = symmetrizer_rank_incremental(space, degree, state)
            engines.append("incremental")
        elif engine == "auto":
            cost = space.dim**degree * factorial(degree)
            if state is None and cost <= direct_budget // 4:
                d = symmetrizer_rank_direct(space, degree, direct_budget)
                engines.append("direct")
            else:
                if state is None:
                    state = IncrementalEngine(space, memo_cap)
                d = symmetrizer_rank_incremental(space, degree, state)
                engines.append("incremental")
        else:
            raise ValueError(f"unknown engine {engine!r}")
        if d == 0:
            verdict = "finite"
            total = sum(dims)
            top = degree - 1
            break
        dims.append(d)
        degree += 1
    wall_ms = int((time.monotonic() - start) * 1000)
    return HilbertReport(
        rack=space.rack.name,
        cocycle=space.cocycle.name,
        field=format_field(space.field),
        dims=dims,
        verdict=verdict,
        total=total,
        top_degree=top,
        cap=cap,
        engine_per_degree=engines,
        wall_ms=wall_ms,
    )


def reduction_compare(space: BraidedSpace, ideal, cap: int = DEFAULT_CAP, engine: str = "auto"):
    """Hilbert reports for V and its reduction V_F, with the per-degree
    pre-Nichols inequality dim B^n(V_F) <= dim B^n(V) checked where both
    series are known exactly."""
    reduced = space.reduce_mod(ideal)
    report = hilbert_series(space, cap, engine)
    report_f = hilbert_series(reduced, cap, engine)
    violations = []
    for n in range(min(len(report.dims), len(report_f.dims))):
        if report_f.dims[n] > report.dims[n]:
            violations.append(n)
    # degrees beyond a finite char-0 series are zero there; any positive
    # reduced dimension at such a degree also violates the inequality
    if report.verdict == "finite":
        for n in range(len(report.dims), len(report_f.dims)):
            if report_f.dims[n] > 0:
                violations.append(n)
    return report, report_f, violations
