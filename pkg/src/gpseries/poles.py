"""Reducibility walls derived from character data and pole assignments.

The inducing datum carries the real unramified exponent (a rational vector
of a_M^*, dominant for the relative simples) and, per orbit of the
reflective roots under the relative Weyl group, the positive location of
the unique co-rank-one pole.  A positive reflective coroot enters the wall
set exactly when its pairing against the exponent hits the orbit's pole.

The module also houses the exact-rank independence check with certificates,
the regularity test on the coroot system generated by the walls, the
obtuseness property of same-length oriented walls, and a seeded randomized
stress test of the independence claim.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import ratlin
from .arrangement import WallSet
from .cartan import cartan_pairing
from .errors import InvariantViolation, SpecError
from .levi import LeviDatum, RelativeWeylGroup
from .ratlin import Vec, dot, vadd, vscale


@dataclass(frozen=True)
class InducingDatum:
    """Combinatorial stand-in for a regular supercuspidal inducing datum.

    Exactly one of ``poles`` (orbit key -> positive pole location) and
    ``explicit_walls`` must be provided.  ``omega`` is the real unramified
    exponent in ambient coordinates; it may be omitted only in the explicit-
    wall form, in which case exponent-dependent flags are skipped.
    """

    omega: Vec | None
    poles: dict[str, Fraction] | None = None
    explicit_walls: tuple[int, ...] | None = None
    assume_regular: bool = False
    assume_generic: bool = False


def validate_exponent(ld: LeviDatum, omega: Sequence[Fraction]) -> Vec:
    v = tuple(Fraction(x) for x in omega)
    if len(v) != ld.rs.ambient_dim:
        raise SpecError("exponent has the wrong ambient dimension")
    if not ld.in_a_star(v):
        raise SpecError("exponent does not lie in a_M^* (theta-perp inside span(Phi))")
    for d in ld.delta_m:
        if cartan_pairing(v, ld.rel_roots[d]) < 0:
            raise SpecError(
                "exponent is not dominant for the relative simples; "
                "conjugate it into the closed dominant chamber first"
            )
    return v


def derive_walls(
    ld: LeviDatum,
    rwg: RelativeWeylGroup,
    datum: InducingDatum,
) -> WallSet:
    """Positive reflective coroots whose exponent pairing hits their orbit's
    pole location."""
    if datum.poles is None:
        raise SpecError("derive_walls needs the orbit-pole form of the datum")
    if datum.omega is None:
        raise SpecError("derive_walls needs an exponent")
    omega = validate_exponent(ld, datum.omega)
    known = {f"orbit{k}" for k in range(len(rwg.orbits()))}
    for key, value in datum.poles.items():
        if key not in known:
            raise SpecError(f"unknown orbit key {key!r}; expected one of {sorted(known)}")
        if Fraction(value) <= 0:
            raise SpecError("pole locations must be strictly positive")
    walls = []
    for r in ld.walls_universe:
        pole = datum.poles.get(rwg.orbit_key_of(r))
        if pole is None:
            continue
        val = cartan_pairing(omega, ld.rel_roots[r])
        if abs(val) == Fraction(pole):
            walls.append(r)
    return WallSet.make(ld, walls)


def coroot_system(ld: LeviDatum, walls: WallSet) -> frozenset[int]:
    """The coroot system generated by the walls: the orbit of the wall set,
    with negatives, under the group generated by the walls' reflections.
    Returned as relative root indices."""
    gens = [ld._refl_perm[r] for r in walls.rel_indices]
    seen = set()
    stack = []
    for r in walls.rel_indices:
        seen.add(r)
        seen.add(ld.rel_neg_of[r])
        stack.extend((r, ld.rel_neg_of[r]))
    while stack:
        cur = stack.pop()
        for g in gens:
            img = ld.rel_image_of_perm(g, cur)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return frozenset(seen)


def exponent_is_regular(
    ld: LeviDatum, omega: Sequence[Fraction], generated: Iterable[int]
) -> bool:
    """True iff the exponent pairs to a nonzero value against every coroot of
    the generated system (no hidden co-rank-one coincidence)."""
    return all(cartan_pairing(omega, ld.rel_roots[r]) != 0 for r in generated)


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    echelon: tuple[Vec, ...] | None = None
    relation: Vec | None = None


def verify_linear_independence(vectors: Sequence[Sequence[Fraction]]) -> IndependenceResult:
    """Exact rank computation with a certificate: an echelon basis when
    independent, an explicit vanishing rational combination otherwise."""
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    relation = ratlin.dependency(vecs)
    if relation is None:
        red, _ = ratlin.rref(vecs) if vecs else ([], [])
        return IndependenceResult(True, echelon=tuple(tuple(r) for r in red))
    combo = ratlin.zero_vec(len(vecs[0]))
    for c, v in zip(relation, vecs):
        combo = vadd(combo, vscale(c, v))
    if not ratlin.is_zero(combo):
        raise InvariantViolation("dependency certificate does not vanish")
    return IndependenceResult(False, relation=relation)


@dataclass(frozen=True)
class OrientedWalls:
    """Walls reoriented so the exponent pairs positively, split by pole value."""

    items: tuple[int, ...]  # relative indices, already on the positive-pairing side
    by_pole: dict[Fraction, tuple[int, ...]]


def orient_walls(
    ld: LeviDatum, omega: Sequence[Fraction], walls: WallSet
) -> OrientedWalls:
    items = []
    by_pole: dict[Fraction, list[int]] = {}
    for r in walls.rel_indices:
        val = cartan_pairing(omega, ld.rel_roots[r])
        if val == 0:
            raise SpecError("oriented walls need nonzero pairings")
        idx = r if val > 0 else ld.rel_neg_of[r]
        items.append(idx)
        by_pole.setdefault(abs(val), []).append(idx)
    return OrientedWalls(tuple(items), {k: tuple(v) for k, v in by_pole.items()})


def obtuseness_check(ld: LeviDatum, oriented: OrientedWalls) -> bool:
    """True iff any two distinct same-length oriented walls pair
    non-positively."""
    items = oriented.items
    for i, a in enumerate(items):
        va = ld.rel_roots[a]
        for b in items[i + 1 :]:
            vb = ld.rel_roots[b]
            if dot(va, va) != dot(vb, vb):
                continue
            if cartan_pairing(va, vb) > 0:
                return False
    return True


def _length_classes(ld: LeviDatum, generated: Iterable[int]) -> dict[Fraction, set[int]]:
    out: dict[Fraction, set[int]] = {}
    for r in generated:
        v = ld.rel_roots[r]
        out.setdefault(dot(v, v), set()).add(r)
    return out


def _wall_orbits_within(
    ld: LeviDatum, walls: WallSet, generated: frozenset[int]
) -> list[set[int]]:
    """Orbits of the generated coroot system under the group generated by the
    wall reflections."""
    gens = [ld._refl_perm[r] for r in walls.rel_indices]
    orbits: list[set[int]] = []
    seen: set[int] = set()
    for r in sorted(generated):
        if r in seen:
            continue
        orbit = {r}
        stack = [r]
        while stack:
            cur = stack.pop()
            for g in gens:
                img = ld.rel_image_of_perm(g, cur)
                if img not in orbit:
                    orbit.add(img)
                    stack.append(img)
        seen |= orbit
        orbits.append(orbit)
    return orbits


def _random_fraction(rng: random.Random, bound: int = 64) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def sample_dominant_exponent(
    ld: LeviDatum, rng: random.Random, bound: int = 64, zero_prob: float = 0.25
) -> Vec:
    """Random rational exponent in the closed dominant chamber of a_M^*,
    drawn as nonnegative combinations of the basis dual to the relative
    simple coroots."""
    basis = dual_dominance_basis(ld)
    out = ratlin.zero_vec(ld.rs.ambient_dim)
    for b in basis:
        if rng.random() < zero_prob:
            continue
        out = vadd(out, vscale(_random_fraction(rng, bound), b))
    return out


def dual_dominance_basis(ld: LeviDatum) -> tuple[Vec, ...]:
    """Vectors m_k of a_M^* with <m_k, delta_j^vee> = delta_kj, where delta_j
    runs over the relative simples."""
    if getattr(ld, "_dual_basis", None) is not None:
        return ld._dual_basis
    n = ld.iota
    mat = [
        [cartan_pairing(ld.a_star_basis[k], ld.rel_roots[d]) for d in ld.delta_m]
        for k in range(n)
    ]
    basis = []
    for j in range(n):
        rhs = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        coeff = ratlin.solve([list(r) for r in zip(*mat)], rhs)
        if coeff is None:
            raise InvariantViolation("dominance basis solve failed")
        v = ratlin.zero_vec(ld.rs.ambient_dim)
        for c, b in zip(coeff, ld.a_star_basis):
            v = vadd(v, vscale(c, b))
        basis.append(tuple(v))
    ld._dual_basis = tuple(basis)
    return ld._dual_basis


def sample_poles(
    ld: LeviDatum,
    rwg: RelativeWeylGroup,
    omega: Vec,
    rng: random.Random,
    hit_prob: float = 0.85,
) -> dict[str, Fraction]:
    """Random positive pole per orbit.  With probability ``hit_prob`` the pole
    is drawn from the pairing values the exponent actually attains on that
    orbit, so the derived wall set is usually nonempty; otherwise it is an
    arbitrary positive rational."""
    poles: dict[str, Fraction] = {}
    for k, orbit in enumerate(rwg.orbits()):
        attained = sorted(
            {
                abs(cartan_pairing(omega, ld.rel_roots[r]))
                for r in orbit
                if ld.rel_positive[r]
            }
            - {Fraction(0)}
        )
        if attained and rng.random() < hit_prob:
            poles[f"orbit{k}"] = rng.choice(attained)
        else:
            poles[f"orbit{k}"] = _random_fraction(rng)
    return poles


@dataclass
class StressReport:
    """Outcome of a randomized independence sweep; violations falsify the
    structural claim and are reported verbatim, never suppressed."""

    cartan: str
    theta: tuple[int, ...]
    trials: int
    seed: int
    nonempty: int = 0
    regular: int = 0
    max_walls: int = 0
    violations: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "cartan": self.cartan,
            "theta": list(self.theta),
            "trials": self.trials,
            "seed": self.seed,
            "nonempty": self.nonempty,
            "regular": self.regular,
            "max_walls": self.max_walls,
            "violations": self.violations,
            "elapsed": self.elapsed,
        }


def independence_stress_test(
    ld: LeviDatum,
    rwg: RelativeWeylGroup,
    trials: int,
    seed: int,
) -> StressReport:
    """Draw random (exponent, pole) data; whenever the derived wall set is
    regular on its generated coroot system, assert linear independence,
    obtuseness of the oriented walls, and the corank bound."""
    if not ld.reflective_positives:
        raise SpecError("stress test needs a nonempty reflective subsystem")
    rng = random.Random(seed)
    report = StressReport(ld.rs.cartan_type.label, ld.theta, trials, seed)
    t0 = time.monotonic()
    for trial in range(trials):
        omega = sample_dominant_exponent(ld, rng)
        poles = sample_poles(ld, rwg, omega, rng)
        datum = InducingDatum(omega=omega, poles=poles)
        walls = derive_walls(ld, rwg, datum)
        if not walls.rel_indices:
            continue
        report.nonempty += 1
        report.max_walls = max(report.max_walls, len(walls))
        generated = coroot_system(ld, walls)
        if not exponent_is_regular(ld, omega, generated):
            continue
        report.regular += 1
        detail = {
            "trial": trial,
            "omega": [str(x) for x in omega],
            "poles": {k: str(v) for k, v in sorted(poles.items())},
            "walls": [[str(x) for x in ld.rel_coroot(r)] for r in walls.rel_indices],
        }
        result = verify_linear_independence(walls.coroot_vectors(ld))
        if not result.independent:
            detail["failure"] = "dependent wall set under regularity"
            detail["relation"] = [str(x) for x in result.relation]
            report.violations.append(detail)
            continue
        if len(walls) > ld.iota:
            detail["failure"] = "more walls than the corank"
            report.violations.append(detail)
            continue
        oriented = orient_walls(ld, omega, walls)
        if not obtuseness_check(ld, oriented):
            detail["failure"] = "same-length oriented walls pair positively"
            report.violations.append(detail)
            continue
        _check_orbit_length_rule(ld, walls, generated, report, detail)
    report.elapsed = time.monotonic() - t0
    return report


def _check_orbit_length_rule(ld, walls, generated, report, detail):
    """Within each irreducible piece of the generated system, reflection
    orbits must coincide with length classes (at most two lengths)."""
    orbits = _wall_orbits_within(ld, walls, generated)
    pieces = _connected_pieces(ld, generated)
    for piece in pieces:
        classes = _length_classes(ld, piece)
        if len(classes) > 2:
            d = dict(detail)
            d["failure"] = "more than two length classes in one irreducible piece"
            report.violations.append(d)
            return
        for orbit in orbits:
            inside = orbit & piece
            if not inside:
                continue
            lengths = {dot(ld.rel_roots[r], ld.rel_roots[r]) for r in inside}
            if len(lengths) != 1:
                d = dict(detail)
                d["failure"] = "reflection orbit mixes lengths"
                report.violations.append(d)
                return


def _connected_pieces(ld: LeviDatum, generated: frozenset[int]) -> list[set[int]]:
    """Connected components of the generated system under non-orthogonality."""
    items = sorted(generated)
    pieces: list[set[int]] = []
    seen: set[int] = set()
    for r in items:
        if r in seen:
            continue
        piece = {r}
        stack = [r]
        while stack:
            cur = stack.pop()
            vc = ld.rel_roots[cur]
            for other in items:
                if other not in piece and dot(vc, ld.rel_roots[other]) != 0:
                    piece.add(other)
                    stack.append(other)
        seen |= piece
        pieces.append(piece)
    return pieces
