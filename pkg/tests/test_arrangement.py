from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from gpseries import (
    SpecError,
    WallSet,
    chamber_graph_dot,
    components,
    dominant_component,
    enumerate_chambers,
    image_along_gallery,
    inversion_set,
    kernel_image_partition,
    minimal_gallery,
)
from gpseries.arrangement import crossed_walls, side_of

F = Fraction


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


# ---------------------------------------------------------------------------
# Independent oracle for the split B2 arrangement: enumerate the eight signed
# permutations of the plane directly and evaluate exact pairing signs of the
# transformed base point against wall coroots.  Package internals untouched.


def b2_oracle(wall_coroots):
    base = (F(3), F(1))  # sum of the positive roots e1-e2, e2, e1, e1+e2
    points = []
    for swap in (False, True):
        for s1 in (1, -1):
            for s2 in (1, -1):
                x, y = base
                if swap:
                    x, y = y, x
                points.append((s1 * x, s2 * y))
    groups = {}
    for p in points:
        key = tuple(p[0] * c[0] + p[1] * c[1] > 0 for c in wall_coroots)
        groups.setdefault(key, []).append(p)
    return groups


B2_SIMPLE_COROOTS = [vec(1, -1), vec(0, 2)]   # (e1-e2)^vee, e2^vee
B2_SHORT_COROOTS = [vec(2, 0), vec(0, 2)]     # e1^vee, e2^vee

# Frozen oracle outcomes (recomputed live by the oracle in the tests below):
# the two simple coroots split the 8 chambers 1/3/3/1; the orthogonal short
# pair splits them 2/2/2/2.
ORACLE_SIMPLE_SIZES = {(True, True): 1, (False, True): 3, (True, False): 3, (False, False): 1}
ORACLE_SHORT_SIZES = {k: 2 for k in ORACLE_SIMPLE_SIZES}


def walls_by_coroots(ld, coroots):
    return WallSet.from_coroot_vectors(ld, coroots)


def test_b2_oracle_sizes():
    got = {k: len(v) for k, v in b2_oracle(B2_SIMPLE_COROOTS).items()}
    assert got == ORACLE_SIMPLE_SIZES
    got2 = {k: len(v) for k, v in b2_oracle(B2_SHORT_COROOTS).items()}
    assert got2 == ORACLE_SHORT_SIZES


def test_chamber_counts(rwg_of):
    assert len(enumerate_chambers(rwg_of("A1", ()))) == 2
    assert len(enumerate_chambers(rwg_of("B2", ()))) == 8
    # degenerate: no reflective roots at all
    assert len(enumerate_chambers(rwg_of("D4", (1, 2)))) == 1


def test_b2_components_match_oracle(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    for coroots, expected in (
        (B2_SIMPLE_COROOTS, ORACLE_SIMPLE_SIZES),
        (B2_SHORT_COROOTS, ORACLE_SHORT_SIZES),
    ):
        walls = walls_by_coroots(ld, coroots)
        comps = components(rwg, walls)
        got = {c.sign_vector: c.n_chambers for c in comps}
        assert got == expected
        assert comps[0].sign_vector == (True, True)
        assert dominant_component(comps) is comps[0]
        # identity chamber sits in the dominant component
        assert any(o.is_identity for o in comps[0].chamber_owners)


def test_empty_walls_single_component(rwg_of):
    rwg = rwg_of("B2", ())
    comps = components(rwg, WallSet.make(rwg.ld, ()))
    assert len(comps) == 1
    assert comps[0].n_chambers == 8
    assert dominant_component(comps) is comps[0]


def test_wall_validation(levi_of):
    ld = levi_of("D6", (0, 2, 3, 4))
    # a relative root outside the reflective subsystem is rejected
    bad = next(r for r in ld.rel_positives if r not in set(ld.walls_universe))
    with pytest.raises(SpecError):
        WallSet.make(ld, (bad,))
    with pytest.raises(SpecError):
        WallSet.from_coroot_vectors(ld, [vec(1, 0, 0, 0, 0, 0)])


def test_chamber_fields(rwg_of):
    rwg = rwg_of("B2", ())
    chambers = enumerate_chambers(rwg)
    ident = next(c for c in chambers if c.owner.is_identity)
    # dominant chamber: all-plus profile, interior point is the positive sum
    assert all(ident.sign_profile)
    assert ident.interior_point == vec(3, 1)
    assert ident.reduced_word == ()
    # interior points are pairwise distinct and never on a wall
    pts = {c.interior_point for c in chambers}
    assert len(pts) == 8


def test_inversion_sets(rwg_of):
    rwg = rwg_of("B2", ())
    ld = rwg.ld
    w0 = max(rwg.reflection_subgroup, key=lambda w: len(w.word))
    e = rwg.identity
    assert inversion_set(rwg, e, e) == ()
    for k, d in enumerate(ld.reflective_simples):
        s = rwg.simple_reflections[k]
        assert inversion_set(rwg, e, s) == (d,)
    assert set(inversion_set(rwg, e, w0)) == set(ld.reflective_positives)


def test_minimal_gallery_properties(rwg_of):
    rwg = rwg_of("B2", ())
    e = rwg.identity
    w0 = max(rwg.reflection_subgroup, key=lambda w: len(w.word))
    assert minimal_gallery(rwg, e, e) == ()
    gal = minimal_gallery(rwg, e, w0)
    assert len(gal) == 4
    # walls crossed along any minimal gallery = walls separating the two
    # chambers: w . R((w^-1 w')^-1) up to sign, each crossed exactly once
    for w in rwg.reflection_subgroup:
        for wp in rwg.reflection_subgroup:
            gal = minimal_gallery(rwg, w, wp)
            assert len(gal) == len(inversion_set(rwg, w, wp))
            walls = [wall for wall, _ in crossed_walls(rwg, w, gal)]
            assert len(set(walls)) == len(walls)
            expected = set()
            ld = rwg.ld
            for r in inversion_set(rwg, wp, w):
                img = rwg.rel_image(w, r)
                expected.add(img if ld.rel_positive[img] else ld.rel_neg_of[img])
            assert set(walls) == expected
            separating = {
                r
                for r in ld.walls_universe
                if side_of(rwg, w, r) != side_of(rwg, wp, r)
            }
            assert set(walls) == separating


def test_gallery_endpoint_validation(rwg_of):
    rwg = rwg_of("D4", (1, 2))
    w1 = next(w for w in rwg.chamber_stabilizer if not w.is_identity)
    with pytest.raises(SpecError):
        minimal_gallery(rwg, rwg.identity, w1)


def test_kernel_image_b2_frozen(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    e = rwg.identity
    w0 = max(rwg.reflection_subgroup, key=lambda w: len(w.word))
    # oracle: nothing separates a chamber from itself
    ker, im = kernel_image_partition(rwg, e, e, walls_by_coroots(ld, B2_SIMPLE_COROOTS))
    assert ker == frozenset() and len(im) == 8
    # both wall choices, frozen against the signed-permutation oracle:
    # kernel = union over separating walls of the same-side-as-w chambers.
    for coroots, sizes in (
        (B2_SIMPLE_COROOTS, (7, 1)),
        (B2_SHORT_COROOTS, (6, 2)),
    ):
        groups = b2_oracle(coroots)
        kside = sum(
            n
            for key, pts in groups.items()
            for n in [len(pts)]
            if any(key[i] for i in range(2))
        )
        walls = walls_by_coroots(ld, coroots)
        ker, im = kernel_image_partition(rwg, e, w0, walls)
        assert (len(ker), len(im)) == (kside, 8 - kside) == sizes
        assert w0 in im


def test_kernel_image_a1(rwg_of, levi_of):
    rwg = rwg_of("A1", ())
    ld = levi_of("A1", ())
    walls = WallSet.make(ld, ld.walls_universe)
    e = rwg.identity
    s = rwg.simple_reflections[0]
    ker, im = kernel_image_partition(rwg, e, s, walls)
    assert ker == frozenset({e})
    assert im == frozenset({s})


@pytest.mark.parametrize("label,theta", [("B3", ()), ("A3", (0,)), ("C3", (2,)), ("D4", (0,))])
def test_gallery_independence_random(label, theta, rwg_of):
    rwg = rwg_of(label, theta)
    ld = rwg.ld
    rng = random.Random(f"gallery:{label}:{theta}")
    els = list(rwg.reflection_subgroup)
    for _ in range(60):
        w, wp = rng.choice(els), rng.choice(els)
        chosen = [r for r in ld.walls_universe if rng.random() < 0.5]
        walls = WallSet.make(ld, chosen)
        g1 = minimal_gallery(rwg, w, wp)
        g2 = minimal_gallery(rwg, w, wp, prefer_last=True)
        g3 = minimal_gallery(rwg, w, wp, rng=rng)
        ker, im = kernel_image_partition(rwg, w, wp, walls)
        for gal in (g1, g2, g3):
            assert image_along_gallery(rwg, w, gal, walls) == im
        assert wp in im
        assert ker | im == set(rwg.elements) and not (ker & im)


def test_sign_coherence_across_chamber_stabilizer(rwg_of):
    # the full relative group sees only the reflection-subgroup sign vectors
    rwg = rwg_of("D6", (0, 2, 3, 4))
    for w in rwg.elements:
        w0, _ = rwg.factor(w)
        assert rwg.sign_mask(w) == rwg.sign_mask(w0)


def test_dot_output(rwg_of, levi_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    walls = walls_by_coroots(ld, B2_SIMPLE_COROOTS)
    dot = chamber_graph_dot(rwg, walls)
    assert dot.startswith("graph chambers {")
    assert dot.count("subgraph cluster_") == 4
    assert 'label="e"' in dot
    assert dot.count(" -- ") == 8  # 8 chambers x 2 adjacencies / 2
    assert "color=red" in dot
    # deterministic output
    assert dot == chamber_graph_dot(rwg, walls)
