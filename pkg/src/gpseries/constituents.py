"""Assembly of the full decomposition report.

One constituent per sign-vector component of the wall arrangement; each
carries the set of relative Weyl elements whose chamber lies in the
component (the combinatorial Jacquet module), the square-integrability,
temperedness and genericity flags, and the duality partner obtained by
negating the sign vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import ratlin
from .arrangement import Component, WallSet, components, restricted_key
from .cartan import WeylElement
from .errors import InvariantViolation, SpecError
from .levi import LeviDatum, RelativeWeylGroup
from .poles import InducingDatum, validate_exponent
from .ratlin import Vec


@dataclass
class Constituent:
    component: Component
    jacquet: tuple[WeylElement, ...]
    aubert_dual: int = -1
    square_integrable: bool | None = None
    tempered: bool | None = None
    generic: bool | None = None
    is_subrepresentation_witness: bool = False

    @property
    def cid(self) -> int:
        return self.component.cid

    @property
    def sign_string(self) -> str:
        return self.component.sign_string


@dataclass
class DecompositionReport:
    ld: LeviDatum
    rwg: RelativeWeylGroup
    walls: WallSet
    datum: InducingDatum
    constituents: list[Constituent]
    notes: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.constituents)

    @property
    def irreducible(self) -> bool:
        return self.length == 1

    @property
    def is_full_group(self) -> bool:
        return len(self.ld.theta) == self.ld.rs.rank


def decompose(
    ld: LeviDatum,
    rwg: RelativeWeylGroup,
    walls: WallSet,
    datum: InducingDatum,
) -> DecompositionReport:
    """Build the constituent list for one wall set.

    Requires the regularity hypothesis to be asserted on the datum; the
    exponent, when present, must be dominant.  Components are indexed by
    sign vector (all-plus first); the Jacquet set of a component collects
    every relative Weyl element whose chamber shows the component's signs.
    """
    if not datum.assume_regular:
        raise SpecError(
            "decomposition requires assume_regular: the parametrization is "
            "stated for regular inducing data, which this engine cannot infer"
        )
    if datum.omega is not None:
        validate_exponent(ld, datum.omega)
    comps = components(rwg, walls)
    by_key = {c.sign_vector: c for c in comps}

    jacquet: dict[tuple[bool, ...], list[WeylElement]] = {
        c.sign_vector: [] for c in comps
    }
    for w in rwg.elements:
        key = restricted_key(rwg.sign_mask(w), walls, ld)
        if key not in jacquet:
            raise InvariantViolation(
                "an element's sign vector is not realized by any chamber"
            )
        jacquet[key].append(w)

    consts = []
    for c in comps:
        members = tuple(jacquet[c.sign_vector])
        expected = len(rwg.chamber_stabilizer) * c.n_chambers
        if len(members) != expected:
            raise InvariantViolation(
                "Jacquet set size differs from |W_M^1| * #chambers"
            )
        consts.append(Constituent(component=c, jacquet=members))
    total = sum(len(c.jacquet) for c in consts)
    if total != len(rwg.elements):
        raise InvariantViolation("Jacquet sets do not partition the relative group")

    report = DecompositionReport(ld, rwg, walls, datum, consts)
    if report.is_full_group:
        report.notes.append("no induction performed: the Levi is the whole group")
    return report


def _span_rank(vectors: Sequence[Vec]) -> int:
    return ratlin.rank(list(vectors)) if vectors else 0


def flag_square_integrable(report: DecompositionReport) -> DecompositionReport:
    """At most one constituent is flagged: the all-plus component, and only
    when the wall roots span both the reflective span and all of a_M^*."""
    if report.is_full_group:
        report.notes.append("square-integrability skipped: no induction")
        return report
    ld = report.ld
    wall_roots = report.walls.root_vectors(ld)
    full = (
        _span_rank(wall_roots) == ld.iota
        and _span_rank(ld.small_basis) == ld.iota
    )
    flagged = 0
    for c in report.constituents:
        c.square_integrable = full and all(c.component.sign_vector)
        flagged += bool(c.square_integrable)
    if flagged > 1:
        raise InvariantViolation("more than one square-integrable constituent")
    return report


def flag_tempered(report: DecompositionReport) -> DecompositionReport:
    """At most one constituent is flagged: the all-plus component, and only
    when the exponent lies in the span of the wall roots (equivalently,
    vanishes on the common kernel of the wall coroots)."""
    if report.is_full_group:
        report.notes.append("temperedness skipped: no induction")
        return report
    ld = report.ld
    wall_roots = list(report.walls.root_vectors(ld))
    wall_rank = _span_rank(wall_roots)
    if report.datum.omega is not None:
        omega = tuple(Fraction(x) for x in report.datum.omega)
        in_span = _span_rank(wall_roots + [omega]) == wall_rank
    elif wall_rank == ld.iota:
        # Walls span all of a_M^*, so any exponent lies in their span.
        in_span = True
    else:
        for c in report.constituents:
            c.tempered = None
        report.notes.append("temperedness skipped: no exponent in the datum")
        return report
    flagged = 0
    for c in report.constituents:
        c.tempered = in_span and all(c.component.sign_vector)
        flagged += bool(c.tempered)
    if flagged > 1:
        raise InvariantViolation("more than one tempered constituent")
    for c in report.constituents:
        if c.square_integrable and c.tempered is False:
            raise InvariantViolation("square-integrable constituent not tempered")
    return report


def flag_generic(report: DecompositionReport) -> DecompositionReport:
    """Under the genericity hypothesis, flag exactly the all-plus component
    and record the subrepresentation witness (the identity element lies in
    its Jacquet set)."""
    if report.is_full_group:
        report.notes.append("genericity skipped: no induction")
        return report
    if not report.datum.assume_generic:
        report.notes.append("genericity skipped: assume_generic not set")
        for c in report.constituents:
            c.generic = None
        return report
    identity = report.rwg.identity
    for c in report.constituents:
        c.generic = all(c.component.sign_vector)
        if c.generic:
            if identity not in set(c.jacquet):
                raise InvariantViolation(
                    "identity element missing from the dominant Jacquet set"
                )
            c.is_subrepresentation_witness = True
    return report


def aubert_pairing(report: DecompositionReport) -> DecompositionReport:
    """Pair each constituent with the one of negated sign vector; the pairing
    is an involution and, with at least one wall, fixed-point-free."""
    by_key = {c.component.sign_vector: c for c in report.constituents}
    for c in report.constituents:
        neg = tuple(not s for s in c.component.sign_vector)
        partner = by_key.get(neg)
        if partner is None:
            raise InvariantViolation("negated sign vector is not realized")
        c.aubert_dual = partner.cid
    for c in report.constituents:
        if report.constituents[c.aubert_dual].aubert_dual != c.cid:
            raise InvariantViolation("duality pairing is not an involution")
        if len(report.walls) and c.aubert_dual == c.cid:
            raise InvariantViolation("duality pairing has a fixed point")
    return report


def build_report(
    ld: LeviDatum,
    rwg: RelativeWeylGroup,
    walls: WallSet,
    datum: InducingDatum,
) -> DecompositionReport:
    """Decompose and apply every flag pass."""
    report = decompose(ld, rwg, walls, datum)
    flag_square_integrable(report)
    flag_tempered(report)
    flag_generic(report)
    aubert_pairing(report)
    return report


def universal_irreducibility_check(
    ld: LeviDatum,
    walls: WallSet,
    theta_prime: Iterable[int],
) -> bool:
    """Whether every wall's absolute sources lie inside the standard
    subsystem of theta_prime (a superset of theta).  This reports whether the
    hypothesis of the always-irreducible corollary holds; it proves nothing
    by itself."""
    rs = ld.rs
    tp = sorted(set(theta_prime))
    for t in tp:
        if not 0 <= t < rs.rank:
            raise SpecError(f"theta_prime entry {t} out of range")
    if not set(ld.theta) <= set(tp):
        raise SpecError("theta_prime must contain theta")
    tpset = set(tp)
    sub = frozenset(
        i
        for i in range(rs.n_roots)
        if all(c == 0 or k in tpset for k, c in enumerate(rs.coords[i]))
    )
    for r in walls.rel_indices:
        nr = ld.rel_neg_of[r]
        for bundle in (
            ld.sources[r],
            ld.sources_scaled[r],
            ld.sources[nr],
            ld.sources_scaled[nr],
        ):
            if any(i not in sub for i in bundle):
                return False
    return True
