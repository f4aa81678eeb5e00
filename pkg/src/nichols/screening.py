"""The verdict pipeline: diagonal handling, type-C, registry, reduction
certificates, theorem-mode shortcuts, enumeration drivers, and certificate
replay.

Pipeline order for screen():

1. abelian rack: diagonal handling (characteristic-p lookup of the four
   finite families; characteristic-0 families with known odd dimensions),
   then fall through to computation;
2. faithful rack with a type-C witness: infinite;
3. registry of known examples: finite, with the literature dimension;
4. reduction certificate from the Hurwitz-orbit scan: infinite;
5. (with-theorems only) odd-order realization groups with non-abelian
   support, and indecomposable affine racks outside the classified list:
   infinite;
6. Hilbert series up to the cap: finite or an honest unknown.

Infinite verdicts always carry a replayable payload: a certificate that
re-verifies, a type-C witness, or a theorem name with its checked
hypotheses.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .braided import (
    BraidedSpace,
    Cocycle,
    cartan_exponents,
    charp_dynkin_lookup,
    constant_cocycle,
    eps_cocycle,
)
from .config import RunConfig
from .engine import hilbert_series
from .groups import FiniteGroup
from .hurwitz import (
    CertificateParseError,
    InfinitenessCertificate,
    ObstructionPreconditionError,
    check_certificate,
    obstruction_search,
)
from .racks import Rack, as_affine, conjugacy_class_rack, is_type_c, rack_isomorphism, verify_type_c_witness
from .registry import REGISTRY, lookup
from .scalars.gf import FiniteField, PrimeField
from .scalars.units import order_in_field
from . import registry as registry_mod


AFFINE_CLASSIFIED = [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (7, 3), (7, 5)]


@dataclass
class Verdict:
    kind: str                    # "finite" | "infinite" | "unknown"
    total: int | None = None
    source: str = ""
    detail: dict = dc_field(default_factory=dict)
    cap: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "source": self.source}
        if self.total is not None:
            out["total"] = self.total
        if self.cap is not None:
            out["cap"] = self.cap
        if self.detail:
            out["detail"] = _jsonable(self.detail)
        return out

    def __str__(self):
        if self.kind == "finite":
            dim = "?" if self.total is None else self.total
            return f"Finite(dim={dim}, {self.source})"
        if self.kind == "infinite":
            return f"Infinite({self.source})"
        return f"Unknown(cap={self.cap})"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return str(obj)


def _diagonal_verdict(space: BraidedSpace, mode: str, cap: int, config: RunConfig):
    data = space.diagonal_data()
    f = space.field
    p = getattr(f, "characteristic", 0)
    if p:
        case = charp_dynkin_lookup(data, p)
        if case is not None:
            report = hilbert_series(space, cap, "auto", config.direct_budget, config.memo_cap)
            total = report.total if report.verdict == "finite" else None
            return Verdict("finite", total, f"charp-diagonal-{case}",
                           {"case": case, "dims": report.dims})
        return None
    # characteristic 0: the two explicitly-dimensioned odd families
    n = len(data.vertices)
    if n == 2:
        v = data.vertices
        e = data.edge(0, 1)
        for i, j in ((0, 1), (1, 0)):
            zeta, q = v[i], v[j]
            try:
                if order_in_field(f, zeta) != 3:
                    continue
            except ZeroDivisionError:
                continue
            nq = order_in_field(f, q)
            if nq is None or nq in (1, 3) or nq % 2 == 0:
                continue
            if not f.eq(f.mul(e, q), f.one):  # edge must be q^{-1}
                continue
            m = order_in_field(f, f.mul(zeta, f.inv(q)))
            return Verdict("finite", 9 * m * nq, "diagonal-odd-family",
                           {"family": "order3-vertex", "M": m, "N": nq})
    if n == 3:
        v9 = _row18_match(data)
        if v9:
            return Verdict("finite", 3**22, "diagonal-odd-family", {"family": "row18"})
    cartan = cartan_exponents(data)
    if cartan is not None:
        # Cartan type has known finiteness theory but no single closed form
        # at this level; leave the verdict to the computation.
        return ("cartan", cartan)
    return None


def _row18_match(data) -> bool:
    """The two 3-vertex diagrams with a primitive 9th root zeta:
    zeta --1/zeta-- zeta --1/zeta-- zeta^{-3}   and
    zeta --1/zeta-- zeta^{-4} --zeta^4-- zeta^{-3}."""
    from itertools import permutations

    f = data.field
    verts = data.vertices
    for i, m, j in permutations(range(3)):
        if not (data.is_connected_pair(i, m) and data.is_connected_pair(m, j)):
            continue
        if data.is_connected_pair(i, j):
            continue
        zeta = verts[i]
        try:
            if order_in_field(f, zeta) != 9:
                continue
        except ZeroDivisionError:
            continue
        zinv = f.inv(zeta)
        z4 = _fpow(f, zeta, 4)
        zm3 = f.inv(_fpow(f, zeta, 3))
        zm4 = f.inv(z4)
        shape_a = f.eq(verts[m], zeta) and f.eq(verts[j], zm3) and \
            f.eq(data.edge(i, m), zinv) and f.eq(data.edge(m, j), zinv)
        shape_b = f.eq(verts[m], zm4) and f.eq(verts[j], zm3) and \
            f.eq(data.edge(i, m), zinv) and f.eq(data.edge(m, j), z4)
        if shape_a or shape_b:
            return True
    return False


def _fpow(f, a, n: int):
    out = f.one
    for _ in range(n):
        out = f.mul(out, a)
    return out


def screen(space: BraidedSpace, mode: str = "computational", cap: int = 20,
           config: RunConfig | None = None) -> Verdict:
    """Decide finite/infinite/unknown for a braided space, per the pipeline."""
    if mode not in ("computational", "with-theorems"):
        raise ValueError(f"unknown mode {mode!r}")
    config = config or RunConfig()
    ok, witness = space.cocycle.validate()
    if not ok:
        raise ValueError(f"invalid cocycle: identity fails at {witness}")

    cartan_note = None
    if space.rack.is_abelian():
        out = _diagonal_verdict(space, mode, cap, config)
        if isinstance(out, Verdict):
            return out
        if isinstance(out, tuple) and out and out[0] == "cartan":
            cartan_note = out[1]

    if space.rack.is_faithful() and not space.rack.is_abelian():
        if _cocycle_values_finite(space):
            wit, exhaustive = is_type_c(space.rack)
            if wit is not None and verify_type_c_witness(space.rack, wit):
                return Verdict("infinite", None, "type-C",
                               {"witness": {"subrack": wit.subrack, "r": wit.r, "s": wit.s,
                                            "orbit_r": wit.orbit_r, "orbit_s": wit.orbit_s},
                                "exhaustive": exhaustive})

    hit = lookup(space)
    if hit is not None:
        entry, _ = hit
        return Verdict("finite", entry.dimension, "registry",
                       {"key": entry.key, "citation": entry.citation,
                        "desk_computable": entry.desk_computable,
                        **({"note": entry.note} if entry.note else {})})

    if getattr(space.field, "characteristic", 0) == 0 and space.rack.n >= 3:
        try:
            certs = obstruction_search(space, config.primes, config.tuple_budget)
        except ObstructionPreconditionError:
            certs = []
        if certs:
            return Verdict("infinite", None, "certificate",
                           {"certificate": certs[0].to_json(), "count": len(certs)})

    if mode == "with-theorems":
        real = space.realization
        if real is not None and real.group.order % 2 == 1 and not space.rack.is_abelian():
            if real.is_strong() and not real.group.is_abelian():
                return Verdict("infinite", None, "theorem:odd-order",
                               {"group_order": real.group.order,
                                "hypotheses": ["|G| odd", "support class generates",
                                               "support rack non-abelian"]})
        if getattr(space.field, "characteristic", 0) == 0:
            aff = as_affine(space.rack)
            if aff is not None and space.rack.is_indecomposable() and space.rack.n > 1:
                if not _in_affine_list(space.rack):
                    return Verdict("infinite", None, "theorem:affine-list",
                                   {"hypotheses": ["rack is affine", "indecomposable",
                                                   "not among the classified pairs"]})

    report = hilbert_series(space, cap, "auto", config.direct_budget, config.memo_cap)
    if report.verdict == "finite":
        detail = {"dims": report.dims, "top_degree": report.top_degree}
        if cartan_note is not None:
            detail["cartan_matrix"] = cartan_note
        return Verdict("finite", report.total, "computed", detail)
    detail = {"dims": report.dims}
    if cartan_note is not None:
        detail["cartan_matrix"] = cartan_note
    return Verdict("unknown", None, "cap-reached", detail, cap=cap)


def _cocycle_values_finite(space: BraidedSpace) -> bool:
    from .scalars.units import order_of_unit

    f = space.field
    if getattr(f, "characteristic", 0):
        return True
    for row in space.cocycle.matrix:
        for v in row:
            if order_of_unit(v) is None:
                return False
    return True


def _in_affine_list(rack: Rack) -> bool:
    from .racks import affine_field_rack

    for q, d in AFFINE_CLASSIFIED:
        if rack.n == q and rack_isomorphism(rack, affine_field_rack(q, d)) is not None:
            return True
    return False


# -- enumeration drivers ---------------------------------------------------------------


@dataclass
class AffineEnumRow:
    q: int
    d: int
    rack: str
    simple: bool
    verdict: Verdict


def _field_element_degree(field: FiniteField, d) -> int:
    """Degree of the minimal polynomial of d over the prime field."""
    cur = d
    for m in range(1, field.k + 1):
        cur = cur**field.p
        if cur == d:
            return m
    raise RuntimeError("element degree not found (bug)")


def enumerate_affine_simple(q_max: int, mode: str = "computational", cap: int = 20,
                            config: RunConfig | None = None) -> list[AffineEnumRow]:
    """All simple affine racks Aff(F_q, d) with q <= q_max, screened with the
    constant -1 cocycle."""
    from .racks import affine_field_rack, is_simple

    if q_max > 16:
        raise ValueError("affine enumeration capped at q <= 16")
    config = config or RunConfig()
    jobs = []
    for q in range(3, q_max + 1):
        factors = _prime_power(q)
        if factors is None:
            continue
        p, k = factors
        field = FiniteField(p, k)
        for d in field.elements():
            if d.is_zero() or d == field.one:
                continue
            if _field_element_degree(field, d) != k:
                continue
            code = 0
            for c in reversed(d.coeffs):
                code = code * p + c
            jobs.append((q, code))

    def run(job):
        q, code = job
        rack = affine_field_rack(q, code)
        simple = is_simple(rack) if rack.n <= 16 else True
        verdict = screen(BraidedSpace(rack, eps_cocycle(rack)), mode, cap, config)
        return AffineEnumRow(q, code, rack.name, simple, verdict)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    return rows


def _prime_power(q: int):
    d = 2
    n = q
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            return (d, k) if n == 1 else None
        d += 1
    return (q, 1)


@dataclass
class OddOrderRow:
    rep: str
    size: int
    generates: bool
    abelian_rack: bool
    verdict: str
    detail: str = ""


def odd_order_screen(group: FiniteGroup) -> list[OddOrderRow]:
    """Classify every nontrivial conjugacy class of an odd-order group:
    non-abelian class racks are infinite for every cocycle; abelian ones
    route to the diagonal theory."""
    from .groups import cycle_str

    if group.order % 2 == 0:
        raise ValueError("group order must be odd")
    rows = []
    for cls in group.conjugacy_classes():
        rep = min(cls)
        if rep == group.identity:
            continue
        rack = conjugacy_class_rack(group, rep)
        abelian = rack.is_abelian()
        generates = group.class_generates(rep)
        if not abelian:
            verdict = "infinite-for-all-cocycles"
            detail = "odd-order theorem: non-abelian support"
        else:
            verdict = "diagonal-route"
            detail = "abelian support; dimensions depend on the cocycle"
        rows.append(OddOrderRow(cycle_str(rep), len(cls), generates, abelian, verdict, detail))
    return rows


# -- certificate replay -------------------------------------------------------------------


def verify_certificate(payload) -> tuple[bool, list[str]]:
    """Replay a certificate from JSON (dict or string).

    Parse failures raise CertificateParseError; verification failures
    return (False, [reasons]).
    """
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise CertificateParseError(f"bad JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CertificateParseError("certificate must be a JSON object")
    cert = InfinitenessCertificate.from_json(payload)
    return check_certificate(cert)
