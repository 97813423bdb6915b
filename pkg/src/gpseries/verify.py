"""Exhaustive and randomized verification sweeps.

The sweep walks every subset of the simple roots for a list of types and
asserts, Levi by Levi, the structural claims the rest of the package is
built on: the semidirect decomposition of the relative Weyl group, the
simple transitivity of the reflection subgroup on chambers, sign coherence,
conjugation covariance of relative reflections, and the decomposition laws
(component counts, Jacquet partitions, flag uniqueness, duality) for a
family of wall sets including randomly derived ones.  Violations are
collected, never suppressed; the first counterexample is serialized in full.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import poles
from .arrangement import WallSet, components
from .cartan import (
    CartanType,
    RootSystem,
    WeylGroup,
    build_root_system,
    compose,
    generate_weyl,
    invert,
)
from .constituents import build_report
from .errors import GpsError
from .levi import LeviDatum, RelativeWeylGroup, make_levi, relative_weyl_group
from .poles import InducingDatum, sample_dominant_exponent, sample_poles

DEFAULT_COVARIANCE_SAMPLE = 200


@dataclass
class SweepOutcome:
    label: str
    theta: tuple[int, ...]
    stats: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def sweep_types(max_rank: int, families: list[str] | None = None) -> list[CartanType]:
    """Irreducible types of rank <= max_rank, with the exceptional types
    included once their rank fits."""
    out: list[CartanType] = []
    fams = families or ["A", "B", "C", "D", "E", "F", "G"]
    for n in range(1, max_rank + 1):
        for fam in fams:
            try:
                out.append(CartanType(fam, n))
            except GpsError:
                continue
    return out


def check_levi(
    rs: RootSystem,
    wg: WeylGroup,
    theta: tuple[int, ...],
    *,
    rng: random.Random | None = None,
    wall_trials: int = 2,
    covariance_sample: int = DEFAULT_COVARIANCE_SAMPLE,
) -> SweepOutcome:
    """All structural checks for one Levi; see the module docstring."""
    out = SweepOutcome(rs.cartan_type.label, theta)
    rng = rng or random.Random(0)

    def fail(kind: str, **detail):
        out.violations.append({"kind": kind, **detail})

    try:
        ld = make_levi(rs, theta)
        rwg = relative_weyl_group(ld, wg)
    except GpsError as exc:
        fail("construction", error=str(exc))
        return out

    n_m = len(rwg.elements)
    n0 = len(rwg.reflection_subgroup)
    n1 = len(rwg.chamber_stabilizer)
    out.stats = {"W_M": n_m, "W_M0": n0, "W_M1": n1, "iota": ld.iota,
                 "reflective": len(ld.reflective_positives)}

    # Product bijection W_M^0 x W_M^1 -> W_M.
    products = {}
    for w0 in rwg.reflection_subgroup:
        for w1 in rwg.chamber_stabilizer:
            p = compose(w0.perm, w1.perm)
            if p in products:
                fail("product_collision")
            products[p] = (w0, w1)
    if set(products) != set(rwg.by_perm):
        fail("product_not_onto")

    # Descent factorization agrees with the product table.
    for w in rwg.elements:
        w0, w1 = rwg.factor(w)
        if products.get(w.perm) != (w0, w1):
            fail("descent_mismatch", element=w.word)
            break

    # Normality of the reflection subgroup: conjugating the generators by
    # the chamber stabilizer stays inside.
    w0set = rwg._w0set
    for w1 in rwg.chamber_stabilizer:
        inv1 = invert(w1.perm)
        for g in rwg.simple_reflections:
            conj = compose(compose(w1.perm, g.perm), inv1)
            if conj not in w0set:
                fail("not_normal")
                break

    # The chamber stabilizer fixes every positive reflective root.
    for w1 in rwg.chamber_stabilizer:
        img = {rwg.rel_image(w1, r) for r in ld.reflective_positives}
        if img != set(ld.reflective_positives):
            fail("chamber_stabilizer_moves_positives", element=w1.word)
            break

    # Simple transitivity: one chamber per reflection-subgroup element.
    masks = {rwg.sign_mask(w) for w in rwg.reflection_subgroup}
    if len(masks) != n0:
        fail("chambers_not_free")

    # Sign coherence: an element's sign vector equals its W0-part's.
    for w in rwg.elements:
        w0, _ = rwg.factor(w)
        if rwg.sign_mask(w) != rwg.sign_mask(w0):
            fail("sign_incoherence", element=w.word)
            break

    # Conjugation covariance of relative reflections on a deterministic
    # sample (exhaustive when small).
    sample = rwg.elements
    if len(sample) * max(1, len(ld.reflective_positives)) > covariance_sample * 64:
        step = max(1, len(sample) // covariance_sample)
        sample = sample[::step]
    for w in sample:
        invw = invert(w.perm)
        for a in ld.reflective_simples:
            img = rwg.rel_image(w, a)
            lhs = ld._refl_perm[img]
            rhs = compose(compose(w.perm, ld._refl_perm[a]), invw)
            if lhs != rhs:
                fail("covariance", element=w.word, root=a)
                break

    # Decomposition laws over structured and randomly derived wall sets.
    for walls, datum in _wall_cases(ld, rwg, rng, wall_trials):
        _check_decomposition(ld, rwg, walls, datum, fail)

    return out


def _wall_cases(ld, rwg, rng, wall_trials):
    universe = ld.walls_universe
    cases = [(WallSet.make(ld, ()), None)]
    for r in universe:
        cases.append((WallSet.make(ld, (r,)), None))
    if ld.reflective_simples:
        cases.append((WallSet.make(ld, ld.reflective_simples), None))
    if universe and len(universe) <= 10:
        for k in (2, len(universe)):
            for combo in list(combinations(universe, k))[:6]:
                cases.append((WallSet.make(ld, combo), None))
    for _ in range(wall_trials if universe else 0):
        omega = sample_dominant_exponent(ld, rng)
        pole_map = sample_poles(ld, rwg, omega, rng)
        datum = InducingDatum(
            omega=omega, poles=pole_map, assume_regular=True, assume_generic=True
        )
        try:
            walls = poles.derive_walls(ld, rwg, datum)
        except GpsError:
            continue
        cases.append((walls, datum))
    return cases


def _check_decomposition(ld, rwg, walls, datum, fail):
    if datum is None:
        datum = InducingDatum(
            omega=None, explicit_walls=walls.rel_indices,
            assume_regular=True, assume_generic=True,
        )
    try:
        report = build_report(ld, rwg, walls, datum)
    except GpsError as exc:
        fail("report", walls=list(walls.rel_indices), error=str(exc))
        return
    comps = [c.component for c in report.constituents]
    indep = poles.verify_linear_independence(walls.coroot_vectors(ld)).independent
    if indep and len(comps) != 2 ** len(walls):
        fail("component_count", walls=list(walls.rel_indices),
             got=len(comps), expected=2 ** len(walls))
    if len(comps) > 2 ** len(walls):
        fail("component_overflow", walls=list(walls.rel_indices))
    if 2 ** len(walls) > 2 ** ld.iota and indep:
        fail("corank_bound", walls=list(walls.rel_indices))
    seen = set()
    total = 0
    for c in report.constituents:
        members = set(c.jacquet)
        if members & seen:
            fail("jacquet_overlap", walls=list(walls.rel_indices))
        seen |= members
        total += len(members)
        if len(members) != len(rwg.chamber_stabilizer) * c.component.n_chambers:
            fail("jacquet_cardinality", walls=list(walls.rel_indices))
    if total != len(rwg.elements):
        fail("jacquet_partition", walls=list(walls.rel_indices))
    # Flag uniqueness and placement.
    si = [c for c in report.constituents if c.square_integrable]
    te = [c for c in report.constituents if c.tempered]
    if len(si) > 1 or len(te) > 1:
        fail("flag_uniqueness", walls=list(walls.rel_indices))
    for c in si:
        if c.tempered is False:
            fail("si_not_tempered", walls=list(walls.rel_indices))
        if not all(c.component.sign_vector):
            fail("si_off_dominant", walls=list(walls.rel_indices))
    for c in te:
        if not all(c.component.sign_vector):
            fail("tempered_off_dominant", walls=list(walls.rel_indices))
    # Duality is an involution, fixed-point-free when walls exist.
    for c in report.constituents:
        d = report.constituents[c.aubert_dual]
        if d.aubert_dual != c.cid:
            fail("duality_not_involution", walls=list(walls.rel_indices))
        if walls.rel_indices and d.cid == c.cid:
            fail("duality_fixed_point", walls=list(walls.rel_indices))
    # Genericity: flag on the dominant component, witnessed by the identity.
    if not report.is_full_group and datum.assume_generic:
        gen = [c for c in report.constituents if c.generic]
        if len(gen) != 1 or not all(gen[0].component.sign_vector):
            fail("generic_placement", walls=list(walls.rel_indices))
        elif rwg.identity not in set(gen[0].jacquet):
            fail("generic_witness", walls=list(walls.rel_indices))


@dataclass
class SweepReport:
    max_rank: int
    families: list[str]
    trials: int
    seed: int
    outcomes: list[SweepOutcome] = field(default_factory=list)
    stress: list[poles.StressReport] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes) and all(s.ok for s in self.stress)

    def first_violation(self) -> dict | None:
        for o in self.outcomes:
            if not o.ok:
                return {"label": o.label, "theta": list(o.theta), **o.violations[0]}
        for s in self.stress:
            if not s.ok:
                return {"label": s.cartan, "theta": list(s.theta), **s.violations[0]}
        return None

    def to_json(self) -> dict:
        return {
            "max_rank": self.max_rank,
            "families": self.families,
            "trials": self.trials,
            "seed": self.seed,
            "levis_checked": len(self.outcomes),
            "violations": sum(len(o.violations) for o in self.outcomes)
            + sum(len(s.violations) for s in self.stress),
            "first_violation": self.first_violation(),
            "stress": [s.to_json() for s in self.stress],
            "elapsed": self.elapsed,
        }


def run_sweep(
    max_rank: int,
    families: list[str] | None = None,
    trials: int = 0,
    seed: int = 0,
    cap: int = 60_000,
    cache_dir: str | None = None,
) -> SweepReport:
    """Structural sweep over every Levi of every fitting type, plus the
    randomized independence stress test (on the full split Levi by default)."""
    report = SweepReport(max_rank, families or ["A", "B", "C", "D", "E", "F", "G"],
                         trials, seed)
    t0 = time.monotonic()
    for ct in sweep_types(max_rank, families):
        rs = build_root_system(ct)
        wg = generate_weyl(rs, cap=cap, cache_dir=cache_dir)
        for size in range(rs.rank + 1):
            for theta in combinations(range(rs.rank), size):
                rng = random.Random(f"{seed}:{ct.label}:{theta}")
                out = check_levi(rs, wg, theta, rng=rng)
                report.outcomes.append(out)
        if trials > 0:
            ld = make_levi(rs, ())
            rwg = relative_weyl_group(ld, wg)
            report.stress.append(
                poles.independence_stress_test(ld, rwg, trials, seed)
            )
    report.elapsed = time.monotonic() - t0
    return report
