"""Relative Weyl chambers, wall components, galleries, and the kernel/image
combinatorics of one-wall intertwining steps.

Chambers are indexed by the reflection subgroup; every side-of-wall decision
is a sign of an exact pairing, computed as a permutation lookup (the chamber
of w is on the positive side of wall alpha iff w^{-1}.alpha is positive).
Components of the complement of a chosen wall set are chambers grouped by
sign vector; the all-plus component always contains the dominant chamber.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cartan import WeylElement, compose, invert
from .errors import InvariantViolation, SpecError
from .levi import LeviDatum, RelativeWeylGroup
from .ratlin import Vec, dot, vscale


@dataclass(frozen=True)
class WallSet:
    """A set of positive reflective coroots, stored as relative root indices
    in canonical order."""

    rel_indices: tuple[int, ...]

    @classmethod
    def make(cls, ld: LeviDatum, rel_indices: Iterable[int]) -> "WallSet":
        idx = sorted(set(rel_indices))
        allowed = set(ld.walls_universe)
        for r in idx:
            if r not in allowed:
                raise SpecError(
                    f"wall {r} is not a positive reflective relative root"
                )
        return cls(tuple(idx))

    @classmethod
    def from_coroot_vectors(
        cls, ld: LeviDatum, vectors: Sequence[Sequence[Fraction]]
    ) -> "WallSet":
        idx = []
        by_coroot = {ld.rel_coroot(r): r for r in ld.walls_universe}
        for v in vectors:
            key = tuple(Fraction(x) for x in v)
            if key not in by_coroot:
                raise SpecError("vector is not a positive reflective coroot")
            idx.append(by_coroot[key])
        return cls.make(ld, idx)

    def __len__(self):
        return len(self.rel_indices)

    def __iter__(self):
        return iter(self.rel_indices)

    def coroot_vectors(self, ld: LeviDatum) -> tuple[Vec, ...]:
        return tuple(ld.rel_coroot(r) for r in self.rel_indices)

    def root_vectors(self, ld: LeviDatum) -> tuple[Vec, ...]:
        return tuple(ld.rel_roots[r] for r in self.rel_indices)


class Chamber:
    """One relative Weyl chamber: the image of the dominant chamber under an
    element of the reflection subgroup."""

    __slots__ = ("owner", "_rwg", "_mask")

    def __init__(self, rwg: RelativeWeylGroup, owner: WeylElement):
        self.owner = owner
        self._rwg = rwg
        self._mask = rwg.sign_mask(owner)

    @property
    def sign_mask(self) -> int:
        return self._mask

    @property
    def sign_profile(self) -> tuple[bool, ...]:
        """True = positive side, per wall of the full universe."""
        n = len(self._rwg.ld.walls_universe)
        return tuple(not (self._mask >> b) & 1 for b in range(n))

    @property
    def interior_point(self) -> Vec:
        ld = self._rwg.ld
        out = tuple(Fraction(0) for _ in range(ld.rs.ambient_dim))
        for r in ld.reflective_positives:
            img = ld.rel_image_of_perm(self.owner.perm, r)
            out = tuple(x + y for x, y in zip(out, ld.rel_roots[img]))
        return out

    @property
    def reduced_word(self) -> tuple[int, ...]:
        return self._rwg.reflective_word[self.owner]

    def __repr__(self):
        word = "*".join(f"t{i}" for i in self.reduced_word) or "e"
        return f"Chamber({word})"


@dataclass(frozen=True)
class Component:
    """A connected component of the complement of the chosen walls: all
    chambers sharing one sign vector on the wall set."""

    cid: int
    sign_vector: tuple[bool, ...]  # True = positive side, aligned with walls
    chamber_owners: tuple[WeylElement, ...]

    @property
    def sign_string(self) -> str:
        return "".join("+" if s else "-" for s in self.sign_vector)

    @property
    def n_chambers(self) -> int:
        return len(self.chamber_owners)


def enumerate_chambers(rwg: RelativeWeylGroup) -> tuple[Chamber, ...]:
    """One chamber per element of the reflection subgroup; the degenerate
    arrangement (no reflective roots) has the single whole-space chamber."""
    chambers = tuple(Chamber(rwg, w) for w in rwg.reflection_subgroup)
    masks = {c.sign_mask for c in chambers}
    if len(masks) != len(chambers):
        raise InvariantViolation("chamber sign profiles are not distinct")
    return chambers


def restricted_key(mask: int, walls: WallSet, ld: LeviDatum) -> tuple[bool, ...]:
    return tuple(not (mask >> ld.wall_bit[r]) & 1 for r in walls.rel_indices)


def components(
    rwg: RelativeWeylGroup,
    walls: WallSet,
    chambers: Sequence[Chamber] | None = None,
) -> tuple[Component, ...]:
    """Group the chambers by sign vector on the wall set.

    Component ids are the lexicographic order of sign vectors with + before
    -, so the all-plus component is always id 0."""
    ld = rwg.ld
    if chambers is None:
        chambers = enumerate_chambers(rwg)
    groups: dict[tuple[bool, ...], list[WeylElement]] = {}
    for c in chambers:
        key = restricted_key(c.sign_mask, walls, ld)
        groups.setdefault(key, []).append(c.owner)
    # + sorts before - via (not sign) encoding.
    ordered = sorted(groups, key=lambda k: tuple(not s for s in k))
    out = tuple(
        Component(cid, key, tuple(groups[key])) for cid, key in enumerate(ordered)
    )
    if out[0].sign_vector != (True,) * len(walls):
        raise InvariantViolation("the all-plus component is not realized")
    return out


def dominant_component(comps: Sequence[Component]) -> Component:
    """The all-plus component; it contains the dominant chamber."""
    for c in comps:
        if all(c.sign_vector):
            return c
    raise InvariantViolation("no all-plus component present")


def inversion_set(rwg: RelativeWeylGroup, w: WeylElement, wp: WeylElement) -> tuple[int, ...]:
    """Positive reflective roots sent negative by w^{-1} w'; its size is the
    gallery distance between the two chambers."""
    ld = rwg.ld
    v = compose(invert(w.perm), wp.perm)
    return tuple(
        r
        for r in ld.reflective_positives
        if not ld.rel_positive[ld.rel_image_of_perm(v, r)]
    )


def minimal_gallery(
    rwg: RelativeWeylGroup,
    w: WeylElement,
    wp: WeylElement,
    rng: random.Random | None = None,
    prefer_last: bool = False,
) -> tuple[int, ...]:
    """A reduced word for w^{-1} w' in the simple reflective reflections,
    as positions into the reflective simple list.

    The descent choice is deterministic (first descent) unless ``rng`` or
    ``prefer_last`` selects a different reduced word.
    """
    ld = rwg.ld
    simples = ld.reflective_simples
    v = compose(invert(w.perm), wp.perm)
    letters: list[int] = []
    limit = len(ld.reflective_positives) + 1
    for _ in range(limit):
        descents = [
            k
            for k, d in enumerate(simples)
            if not ld.rel_positive[ld.rel_image_of_perm(v, d)]
        ]
        if not descents:
            break
        if rng is not None:
            k = rng.choice(descents)
        elif prefer_last:
            k = descents[-1]
        else:
            k = descents[0]
        v = compose(v, ld._refl_perm[simples[k]])
        letters.append(k)
    else:
        raise InvariantViolation("gallery descent did not terminate")
    if not all(i == j for i, j in enumerate(v)):
        # v must now fix the positive reflective roots; a leftover means the
        # pair was not in the reflection subgroup.
        raise SpecError("both endpoints must lie in the reflection subgroup")
    word = tuple(reversed(letters))
    if len(word) != len(inversion_set(rwg, w, wp)):
        raise InvariantViolation("gallery length does not match the inversion count")
    return word


def crossed_walls(
    rwg: RelativeWeylGroup, w: WeylElement, gallery: Sequence[int]
) -> tuple[tuple[int, WeylElement], ...]:
    """Walls crossed along a gallery starting at w: pairs (positive relative
    root index of the wall, the chamber element after the crossing)."""
    ld = rwg.ld
    out = []
    cur = w
    for k in gallery:
        d = ld.reflective_simples[k]
        wall = rwg.rel_image(cur, d)
        if not ld.rel_positive[wall]:
            wall = ld.rel_neg_of[wall]
        nxt = rwg.canonical(compose(cur.perm, ld._refl_perm[d]))
        out.append((wall, nxt))
        cur = nxt
    return tuple(out)


def side_of(rwg: RelativeWeylGroup, w: WeylElement, wall: int) -> bool:
    """True iff the chamber of w is on the positive side of the wall."""
    ld = rwg.ld
    bit = ld.wall_bit[wall]
    return not (rwg.sign_mask(w) >> bit) & 1


def kernel_image_partition(
    rwg: RelativeWeylGroup,
    w: WeylElement,
    wp: WeylElement,
    walls: WallSet,
) -> tuple[frozenset[WeylElement], frozenset[WeylElement]]:
    """Closed-form kernel/image split of the relative Weyl group.

    The kernel side collects the elements whose chamber sits, for some wall
    of the set separating the chambers of w and w', on the same side as w;
    the image side is the complement, and always contains w'."""
    ld = rwg.ld
    separating = [
        r
        for r in walls.rel_indices
        if side_of(rwg, w, r) != side_of(rwg, wp, r)
    ]
    kernel = set()
    for u in rwg.elements:
        for r in separating:
            if side_of(rwg, u, r) == side_of(rwg, w, r):
                kernel.add(u)
                break
    image = frozenset(u for u in rwg.elements if u not in kernel)
    return frozenset(kernel), image


def image_along_gallery(
    rwg: RelativeWeylGroup,
    w: WeylElement,
    gallery: Sequence[int],
    walls: WallSet,
) -> frozenset[WeylElement]:
    """Stepwise image set: intersect, over the gallery's crossings of chosen
    walls, the elements sitting on the just-crossed side."""
    wall_set = set(walls.rel_indices)
    image = set(rwg.elements)
    for wall, after in crossed_walls(rwg, w, gallery):
        if wall not in wall_set:
            continue
        target = side_of(rwg, after, wall)
        image = {u for u in image if side_of(rwg, u, wall) == target}
    return frozenset(image)


def chamber_graph_dot(
    rwg: RelativeWeylGroup,
    walls: WallSet,
    comps: Sequence[Component] | None = None,
) -> str:
    """DOT rendering of the chamber graph: vertices are chambers labeled by
    reduced words, edges are shared walls, components become clusters, and
    edges crossing chosen walls are highlighted."""
    ld = rwg.ld
    if comps is None:
        comps = components(rwg, walls)
    index = {w: i for i, w in enumerate(rwg.reflection_subgroup)}
    lines = ["graph chambers {", "  node [shape=box];"]
    for comp in comps:
        lines.append(f"  subgraph cluster_{comp.cid} {{")
        lines.append(f'    label="component {comp.cid} [{comp.sign_string}]";')
        for owner in comp.chamber_owners:
            word = rwg.reflective_word[owner]
            label = "*".join(f"t{k}" for k in word) or "e"
            lines.append(f'    c{index[owner]} [label="{label}"];')
        lines.append("  }")
    chosen = set(walls.rel_indices)
    for owner in rwg.reflection_subgroup:
        i = index[owner]
        for k, d in enumerate(ld.reflective_simples):
            partner = rwg.canonical(compose(owner.perm, ld._refl_perm[d]))
            j = index[partner]
            if j <= i:
                continue
            wall = rwg.rel_image(owner, d)
            if not ld.rel_positive[wall]:
                wall = ld.rel_neg_of[wall]
            style = ' [color=red, penwidth=2]' if wall in chosen else ""
            lines.append(f"  c{i} -- c{j}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
