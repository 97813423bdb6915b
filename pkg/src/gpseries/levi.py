"""Relative structures of a standard Levi subgroup.

Given a subset theta of the simple roots, this module derives, in exact
arithmetic:

* the reduced relative roots (nonzero orthogonal projections of the absolute
  roots onto the orthocomplement of theta inside span(Phi), deduplicated,
  keeping only ray-indivisible members) with their positivity and their
  absolute sources;
* the relative reflections w0^{M_alpha} * w0^{M} built from longest elements
  of co-rank-one subsystems, and the subset of relative roots whose
  reflection normalizes the Levi (the "reflective" roots);
* the relative Weyl group, modeled as the setwise stabilizer of theta in the
  ambient Weyl group, together with its reflection subgroup, the complement
  that fixes the dominant relative chamber, and the semidirect factorization
  of every element.

All structures are immutable after construction; derivation is a pure
function of the inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import ratlin
from .cartan import (
    RootSystem,
    WeylElement,
    WeylGroup,
    cartan_pairing,
    compose,
    invert,
    longest_in_subsystem,
)
from .errors import InvariantViolation, SpecError
from .ratlin import Vec, dot, vadd, vscale, vsub


class LeviDatum:
    """Relative roots and reflections for one subset of the simple roots.

    Built by :func:`make_levi`; treat every field as read-only.
    """

    def __init__(self, rs: RootSystem, theta: tuple[int, ...]):
        self.rs = rs
        self.theta = theta  # sorted 0-based positions into Delta
        self.theta_root_indices = frozenset(rs.simple_indices[t] for t in theta)
        tset = set(theta)
        self.phi_theta: frozenset[int] = frozenset(
            i
            for i in range(rs.n_roots)
            if all(c == 0 or k in tset for k, c in enumerate(rs.coords[i]))
        )
        self.iota = rs.rank - len(theta)

        self._project_setup()
        self._collect_relative_roots()
        self._relative_reflections()
        self._reflective_subsystem()

    # -- construction ---------------------------------------------------

    def _project_setup(self):
        rs = self.rs
        tvecs = [rs.roots[rs.simple_indices[t]] for t in self.theta]
        self._theta_vecs = tvecs
        if tvecs:
            gram = [[dot(a, b) for b in tvecs] for a in tvecs]
            self._theta_gram_inv = ratlin.inverse(gram)
        else:
            self._theta_gram_inv = []

    def project(self, v: Sequence[Fraction]) -> Vec:
        """Orthogonal projection onto theta-perp inside span(Phi)."""
        tvecs = self._theta_vecs
        if not tvecs:
            return tuple(Fraction(x) for x in v)
        rhs = [dot(t, v) for t in tvecs]
        coeff = [
            sum((self._theta_gram_inv[i][j] * rhs[j] for j in range(len(rhs))), Fraction(0))
            for i in range(len(rhs))
        ]
        out = tuple(Fraction(x) for x in v)
        for c, t in zip(coeff, tvecs):
            if c:
                out = vsub(out, vscale(c, t))
        return out

    def _collect_relative_roots(self):
        rs = self.rs
        proj_of: dict[int, Vec] = {}
        attained: set[Vec] = set()
        for i in range(rs.n_roots):
            if i in self.phi_theta:
                continue
            p = self.project(rs.roots[i])
            proj_of[i] = p
            attained.add(p)

        # Keep one ray-indivisible representative per signed ray: the
        # shortest attained projection.  Proportional multiples beyond
        # doubling do occur (a long-root Levi in G2 attains 1, 2 and 3
        # times the primitive projection), so plain half-discarding is
        # not enough.
        def ray_key(p: Vec) -> Vec:
            c = next(x for x in p if x != 0)
            return vscale(Fraction(1) / abs(c), p)

        shortest: dict[Vec, Vec] = {}
        for p in attained:
            k = ray_key(p)
            if k not in shortest or dot(p, p) < dot(shortest[k], shortest[k]):
                shortest[k] = p
        reduced = set(shortest.values())

        # Relative simple roots: projections of Delta minus theta, in the
        # Bourbaki order of Delta.  They are always ray-indivisible.
        delta_vecs = []
        for k in range(rs.rank):
            if k in self.theta:
                continue
            p = self.project(rs.roots[rs.simple_indices[k]])
            if p not in reduced:
                raise InvariantViolation("projected simple root is divisible")
            delta_vecs.append(p)
        if len(delta_vecs) != self.iota:
            raise InvariantViolation("relative simple count does not match corank")
        if ratlin.rank(delta_vecs) != self.iota:
            raise InvariantViolation("relative simple roots are dependent")
        self._delta_mat = [
            [delta_vecs[j][i] for j in range(len(delta_vecs))]
            for i in range(rs.ambient_dim)
        ]

        coords = {}
        for p in reduced:
            c = ratlin.solve(self._delta_mat, p) if delta_vecs else ()
            if c is None:
                raise InvariantViolation("relative root outside span of relative simples")
            coords[p] = c
        order = sorted(reduced, key=lambda p: (sum(coords[p], Fraction(0)), p))
        self.rel_roots: tuple[Vec, ...] = tuple(order)
        self.rel_index: dict[Vec, int] = {p: i for i, p in enumerate(order)}
        self.rel_coords: tuple[Vec, ...] = tuple(coords[p] for p in order)
        self.rel_neg_of: tuple[int, ...] = tuple(
            self.rel_index[ratlin.vneg(p)] for p in order
        )
        pos_flags = []
        for p in order:
            c = coords[p]
            h = sum(c, Fraction(0))
            if h == 0 or (h > 0 and not all(x >= 0 for x in c)) or (
                h < 0 and not all(x <= 0 for x in c)
            ):
                raise InvariantViolation("relative positivity is not coordinatewise")
            pos_flags.append(h > 0)
        self.rel_positive: tuple[bool, ...] = tuple(pos_flags)
        self.rel_positives: tuple[int, ...] = tuple(
            i for i, f in enumerate(pos_flags) if f
        )
        self.delta_m: tuple[int, ...] = tuple(self.rel_index[p] for p in delta_vecs)
        self.a_star_basis: tuple[Vec, ...] = tuple(delta_vecs)

        # Absolute sources: exact projections, and the ones landing on a
        # proper multiple of the ray representative.
        rep_of_ray = {ray_key(p): self.rel_index[p] for p in reduced}
        src: dict[int, list[int]] = {i: [] for i in range(len(order))}
        src2: dict[int, list[int]] = {i: [] for i in range(len(order))}
        abs_to_rel: dict[int, int] = {}
        for i, p in proj_of.items():
            r = rep_of_ray[ray_key(p)]
            if p == order[r]:
                src[r].append(i)
            else:
                src2[r].append(i)
            abs_to_rel[i] = r
        self.sources: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(src[i])) for i in range(len(order))
        )
        self.sources_scaled: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(src2[i])) for i in range(len(order))
        )
        self.abs_to_rel: dict[int, int] = abs_to_rel
        for r in range(len(order)):
            if not self.sources[r]:
                raise InvariantViolation("relative root without an exact source")

    def _ray_subsystem_positives(self, r: int) -> list[int]:
        """Absolute positive roots of the co-rank-one subsystem of the ray of
        relative root r: everything projecting into Q*r, plus Phi_theta."""
        nr = self.rel_neg_of[r]
        members = [i for i, rel in self.abs_to_rel.items() if rel in (r, nr)]
        members.extend(self.phi_theta)
        return [i for i in members if self.rs.positive[i]]

    def _relative_reflections(self):
        rs = self.rs
        self._w0_theta_perm = longest_in_subsystem(
            rs, [i for i in self.phi_theta if rs.positive[i]]
        )
        refl: dict[int, tuple[int, ...] | None] = {}
        for r in self.rel_positives:
            sub_pos = self._ray_subsystem_positives(r)
            w0a = longest_in_subsystem(rs, sub_pos)
            perm = compose(w0a, self._w0_theta_perm)
            ok = all(
                perm[i] in self.theta_root_indices for i in self.theta_root_indices
            )
            refl[r] = perm if ok else None
            refl[self.rel_neg_of[r]] = refl[r]
        self._refl_perm = refl

    def _reflective_subsystem(self):
        rs = self.rs
        reflective = sorted(r for r, p in self._refl_perm.items() if p is not None)
        self.reflective: tuple[int, ...] = tuple(reflective)
        self.reflective_positives: tuple[int, ...] = tuple(
            r for r in reflective if self.rel_positive[r]
        )
        refl_set = set(reflective)

        # Simple system of the reflective roots for the inherited positivity.
        pos_vecs = {self.rel_roots[r] for r in self.reflective_positives}
        simples = []
        for r in self.reflective_positives:
            v = self.rel_roots[r]
            if not any(
                vsub(v, self.rel_roots[s]) in pos_vecs
                for s in self.reflective_positives
                if s != r
            ):
                simples.append(r)
        self.reflective_simples: tuple[int, ...] = tuple(simples)
        self.small_basis: tuple[Vec, ...] = tuple(
            self.rel_roots[r] for r in simples
        )

        # Each reflective reflection must act on the relative roots as the
        # exact metric reflection; this also certifies reflection closure.
        for a in self.reflective_positives:
            av = self.rel_roots[a]
            perm = self._refl_perm[a]
            for m in reflective:
                mv = self.rel_roots[m]
                expected = vsub(mv, vscale(cartan_pairing(mv, av), av))
                if expected not in self.rel_index:
                    raise InvariantViolation(
                        "reflective roots are not closed under their reflections"
                    )
                if self.rel_index[expected] != self.rel_image_of_perm(perm, m):
                    raise InvariantViolation(
                        "relative reflection does not act as the metric reflection"
                    )
                if self.rel_index[expected] not in refl_set:
                    raise InvariantViolation(
                        "reflection image left the reflective subsystem"
                    )

        self.p0: Vec = ratlin.zero_vec(rs.ambient_dim)
        for r in self.reflective_positives:
            self.p0 = vadd(self.p0, self.rel_roots[r])
        self.walls_universe: tuple[int, ...] = self.reflective_positives
        self.wall_bit: dict[int, int] = {
            r: b for b, r in enumerate(self.walls_universe)
        }

    # -- queries ---------------------------------------------------------

    def rel_vec(self, r: int) -> Vec:
        return self.rel_roots[r]

    def rel_coroot(self, r: int) -> Vec:
        v = self.rel_roots[r]
        return vscale(Fraction(2) / dot(v, v), v)

    def rel_image_of_perm(self, perm: Sequence[int], r: int) -> int:
        """Index of the image of relative root r under an ambient permutation
        that stabilizes theta."""
        src = self.sources[r][0]
        return self.abs_to_rel[perm[src]]

    def basis_coords(self, v: Sequence[Fraction]) -> Vec:
        """Coordinates of a vector of a_M^* in the emitted basis (Delta_M)."""
        c = ratlin.solve(self._delta_mat, v) if self.a_star_basis else ()
        if c is None:
            raise SpecError("vector does not lie in a_M^*")
        return c

    def vec_from_basis(self, coords: Sequence[Fraction]) -> Vec:
        out = ratlin.zero_vec(self.rs.ambient_dim)
        for c, b in zip(coords, self.a_star_basis):
            out = vadd(out, vscale(Fraction(c), b))
        return out

    def in_a_star(self, v: Sequence[Fraction]) -> bool:
        if not self.rs.in_span(v):
            return False
        return all(dot(v, t) == 0 for t in self._theta_vecs)


def make_levi(rs: RootSystem, theta: Iterable[int]) -> LeviDatum:
    """Derive all relative structures for a subset of the simple roots."""
    theta = tuple(sorted(set(theta)))
    for t in theta:
        if not isinstance(t, int) or not 0 <= t < rs.rank:
            raise SpecError(
                f"theta entry {t!r} is not a simple-root position in 0..{rs.rank - 1}"
            )
    return LeviDatum(rs, theta)


def relative_reflection(ld: LeviDatum, alpha) -> WeylElement | None:
    """The longest-element product for the co-rank-one subsystem of alpha's
    ray; returns None when it does not stabilize theta ("not in W_M").

    ``alpha`` is a relative root, given as an index into ld.rel_roots or as
    an exact vector.
    """
    if isinstance(alpha, int):
        if not 0 <= alpha < len(ld.rel_roots):
            raise SpecError(f"relative root index {alpha} out of range")
        r = alpha
    else:
        key = tuple(Fraction(x) for x in alpha)
        if key not in ld.rel_index:
            raise SpecError("vector is not a relative root")
        r = ld.rel_index[key]
    perm = ld._refl_perm[r]
    return None if perm is None else WeylElement(perm)


def reflective_roots(ld: LeviDatum) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """The relative roots contributing reflections, with their simple system."""
    return (
        tuple(ld.rel_roots[r] for r in ld.reflective),
        tuple(ld.rel_roots[r] for r in ld.reflective_simples),
    )


class RelativeWeylGroup:
    """The setwise stabilizer of theta in the ambient Weyl group, with its
    reflection subgroup, chamber-fixing complement, and factorizations."""

    def __init__(self, ld: LeviDatum, wg: WeylGroup):
        self.ld = ld
        self.wg = wg
        rs = ld.rs
        troots = ld.theta_root_indices
        self.elements: tuple[WeylElement, ...] = tuple(
            w
            for w in wg.elements
            if all(w.perm[i] in troots for i in troots)
        )
        self.by_perm = {w.perm: w for w in self.elements}
        self.identity = wg.identity

        gens = []
        for r in ld.reflective_simples:
            perm = ld._refl_perm[r]
            if perm not in self.by_perm:
                raise InvariantViolation("relative reflection missing from stabilizer")
            gens.append(self.by_perm[perm])
        self.simple_reflections: tuple[WeylElement, ...] = tuple(gens)

        self._enumerate_reflection_subgroup()
        self.chamber_stabilizer: tuple[WeylElement, ...] = tuple(
            w
            for w in self.elements
            if all(
                ld.rel_positive[ld.rel_image_of_perm(w.perm, d)]
                for d in ld.reflective_simples
            )
        )
        w0set = set(self.reflection_subgroup)
        w1set = set(self.chamber_stabilizer)
        if w0set & w1set != {self.identity}:
            raise InvariantViolation("reflection subgroup meets the chamber stabilizer")
        if len(self.reflection_subgroup) * len(self.chamber_stabilizer) != len(
            self.elements
        ):
            raise InvariantViolation(
                "|W_M| != |W_M^0| * |W_M^1|: semidirect decomposition failed"
            )
        self._w0set = frozenset(w.perm for w in self.reflection_subgroup)
        self._w1set = frozenset(w.perm for w in self.chamber_stabilizer)
        self._factor_cache: dict[tuple[int, ...], tuple[WeylElement, WeylElement]] = {}
        self._mask_cache: dict[tuple[int, ...], int] = {}
        self._orbits: tuple[tuple[int, ...], ...] | None = None

    def _enumerate_reflection_subgroup(self):
        ld = self.ld
        ident = self.identity
        words: dict[tuple[int, ...], tuple[int, ...]] = {ident.perm: ()}
        queue = [ident.perm]
        gens = [(k, g.perm) for k, g in enumerate(self.simple_reflections)]
        while queue:
            nxt = []
            for perm in queue:
                base = words[perm]
                for k, g in gens:
                    new = compose(perm, g)
                    if new not in words:
                        words[new] = base + (k,)
                        nxt.append(new)
            queue = nxt
        for perm in words:
            if perm not in self.by_perm:
                raise InvariantViolation("reflection subgroup left the stabilizer")
        elements = sorted(words, key=lambda p: (len(words[p]), p))
        self.reflection_subgroup: tuple[WeylElement, ...] = tuple(
            self.by_perm[p] for p in elements
        )
        self.reflective_word: dict[WeylElement, tuple[int, ...]] = {
            self.by_perm[p]: words[p] for p in elements
        }
        # Every reflective reflection, simple or not, must land inside.
        for r in ld.reflective_positives:
            if ld._refl_perm[r] not in words:
                raise InvariantViolation(
                    "a relative reflection escapes the generated subgroup"
                )

    def __len__(self):
        return len(self.elements)

    def canonical(self, perm: Sequence[int]) -> WeylElement:
        return self.by_perm[tuple(perm)]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.by_perm[compose(a.perm, b.perm)]

    def inv(self, a: WeylElement) -> WeylElement:
        return self.by_perm[invert(a.perm)]

    def rel_image(self, w: WeylElement, r: int) -> int:
        return self.ld.rel_image_of_perm(w.perm, r)

    def sign_mask(self, w: WeylElement) -> int:
        """Bitmask over the wall universe: bit b set iff the chamber of w is
        on the negative side of wall b (sign of <w.p0, wall^vee>)."""
        cached = self._mask_cache.get(w.perm)
        if cached is not None:
            return cached
        ld = self.ld
        inv_perm = invert(w.perm)
        mask = 0
        for b, r in enumerate(ld.walls_universe):
            if not ld.rel_positive[ld.rel_image_of_perm(inv_perm, r)]:
                mask |= 1 << b
        self._mask_cache[w.perm] = mask
        return mask

    def factor(self, w: WeylElement) -> tuple[WeylElement, WeylElement]:
        """Semidirect factorization w = w0 * w1 by dominance descent.

        While w maps some reflective simple root to a negative, strip the
        corresponding relative reflection; the leftover fixes the positive
        reflective roots.  Any inconsistency aborts loudly."""
        cached = self._factor_cache.get(w.perm)
        if cached is not None:
            return cached
        ld = self.ld
        simples = ld.reflective_simples
        v = w.perm
        limit = len(ld.reflective_positives) + 1
        for _ in range(limit):
            neg = next(
                (
                    d
                    for d in simples
                    if not ld.rel_positive[ld.rel_image_of_perm(v, d)]
                ),
                None,
            )
            if neg is None:
                break
            v = compose(v, ld._refl_perm[neg])
        else:
            raise InvariantViolation("semidirect descent did not terminate")
        if v not in self._w1set:
            raise InvariantViolation("descent leftover is not a chamber-fixing element")
        w1 = self.by_perm[v]
        quotient = compose(w.perm, invert(v))
        if quotient not in self._w0set:
            raise InvariantViolation("descent quotient escaped the reflection subgroup")
        w0 = self.by_perm[quotient]
        if compose(w0.perm, w1.perm) != w.perm:
            raise InvariantViolation("semidirect factors do not recompose")
        self._factor_cache[w.perm] = (w0, w1)
        return w0, w1

    def decompose_all(self) -> dict[WeylElement, tuple[WeylElement, WeylElement]]:
        return {w: self.factor(w) for w in self.elements}

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of the reflective roots under the full relative Weyl group,
        each sorted, ordered by smallest member."""
        if self._orbits is not None:
            return self._orbits
        ld = self.ld
        gen_perms = [g.perm for g in self.simple_reflections] + [
            w.perm for w in self.chamber_stabilizer
        ]
        seen: set[int] = set()
        orbits = []
        for r in ld.reflective:
            if r in seen:
                continue
            orbit = {r}
            stack = [r]
            while stack:
                cur = stack.pop()
                for g in gen_perms:
                    img = ld.rel_image_of_perm(g, cur)
                    if img not in orbit:
                        orbit.add(img)
                        stack.append(img)
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
        orbits.sort(key=lambda o: o[0])
        self._orbits = tuple(orbits)
        return self._orbits

    def orbit_key_of(self, r: int) -> str:
        for k, orbit in enumerate(self.orbits()):
            if r in orbit or self.ld.rel_neg_of[r] in orbit:
                return f"orbit{k}"
        raise SpecError("relative root is not reflective")


def relative_weyl_group(ld: LeviDatum, wg: WeylGroup) -> RelativeWeylGroup:
    """Model N_G(M)/M combinatorially as the setwise stabilizer of theta."""
    if wg.rs is not ld.rs:
        raise SpecError("Weyl group and Levi datum come from different root systems")
    return RelativeWeylGroup(ld, wg)
