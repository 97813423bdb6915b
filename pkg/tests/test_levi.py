from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from gpseries import (
    SpecError,
    make_levi,
    reflective_roots,
    relative_reflection,
)
from gpseries.cartan import compose, invert, reflection
from gpseries.ratlin import dot, vneg, vadd, vscale

F = Fraction


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def test_theta_full_is_trivial(rs_of, levi_of):
    ld = levi_of("B2", (0, 1))
    assert ld.iota == 0
    assert ld.rel_roots == ()
    assert ld.reflective == ()


def test_theta_empty_is_absolute(rs_of, levi_of):
    rs = rs_of("B2")
    ld = levi_of("B2", ())
    assert ld.iota == rs.rank
    assert set(ld.rel_roots) == set(rs.roots)
    assert [ld.rel_roots[r] for r in ld.delta_m] == [
        rs.roots[i] for i in rs.simple_indices
    ]
    # absolute case: every relative root is reflective and its reflection is
    # the plain root reflection
    assert set(ld.reflective) == set(range(len(ld.rel_roots)))
    for r in ld.rel_positives:
        w = relative_reflection(ld, r)
        assert w is not None
        i = rs.root_index[ld.rel_roots[r]]
        assert w == reflection(rs, i)


def test_relative_roots_are_reduced_and_signed(levi_of):
    for label, theta in (("D4", (0, 2, 3)), ("A3", (1,)), ("C3", (0, 1))):
        ld = levi_of(label, theta)
        vecs = set(ld.rel_roots)
        for v in vecs:
            assert vscale(F(2), v) not in vecs
            assert vneg(v) in vecs
        for r in ld.rel_positives:
            c = ld.rel_coords[r]
            assert all(x >= 0 for x in c)


def test_doubled_projections_keep_indivisible(levi_of):
    # D4 with theta = {0,2,3} projects e1+e2 onto twice the short ray.
    ld = levi_of("D4", (0, 2, 3))
    assert ld.iota == 1
    assert len(ld.rel_positives) == 1
    r = ld.rel_positives[0]
    assert ld.rel_roots[r] == vec("1/2", "1/2", 0, 0)
    assert len(ld.sources_scaled[r]) == 1  # e1+e2


def test_g2_long_levi_triple_ray(levi_of, rwg_of):
    # The long-root Levi of G2 attains 1, 2 and 3 times the primitive
    # projection on its single ray; only the indivisible member survives.
    ld = levi_of("G2", (1,))
    assert ld.iota == 1
    assert len(ld.rel_positives) == 1
    r = ld.rel_positives[0]
    assert len(ld.sources[r]) == 2       # two roots project exactly
    assert len(ld.sources_scaled[r]) == 3  # scales 2, 3, 3
    rwg = rwg_of("G2", (1,))
    assert len(rwg.elements) == 2
    assert len(rwg.reflection_subgroup) == 2
    assert len(rwg.chamber_stabilizer) == 1
    w = relative_reflection(ld, r)
    assert w is not None and compose(w.perm, w.perm) == tuple(
        range(len(ld.rs.roots))
    )


# ---------------------------------------------------------------------------
# Paper example 1: the GL1 x GL3 Levi of SO8 (type D4) has a two-element
# relative Weyl group and no relative reflections at all.

D4_EXPECTED_MATCHES = [(0, 1), (1, 2), (1, 3)]


def test_d4_gl1_gl3_scan(rs_of, wg_of, levi_of, rwg_of):
    matches = []
    for size in range(5):
        for theta in combinations(range(4), size):
            ld = levi_of("D4", theta)
            rwg = rwg_of("D4", theta)
            if len(rwg.elements) == 2 and not ld.reflective:
                matches.append(theta)
    assert matches == D4_EXPECTED_MATCHES


def test_d4_gl1_gl3_structure(levi_of, rwg_of):
    ld = levi_of("D4", (1, 2))
    rwg = rwg_of("D4", (1, 2))
    assert len(rwg.elements) == 2
    assert ld.reflective == ()
    for r in ld.rel_positives:
        assert relative_reflection(ld, r) is None
    # the nontrivial element factors as (identity, itself)
    w = next(u for u in rwg.elements if not u.is_identity)
    w0, w1 = rwg.factor(w)
    assert w0.is_identity and w1 == w
    assert len(rwg.reflection_subgroup) == 1
    assert set(rwg.chamber_stabilizer) == set(rwg.elements)


# ---------------------------------------------------------------------------
# Paper example 2: the GL2 x GL4 Levi of SO12 (type D6).  With
# e1 = (1/2,1/2,0,0,0,0) and e2 = (0,0,1/4,1/4,1/4,1/4) the relative roots
# realize the pattern {±(e1-e2), ±(e1+e2), ±2e1, ±2e2}: the displayed
# {±e1±e2, ±e1, ±e2} at ray level (the ray-indivisible attained projections
# on the e1 and e2 rays are 2e1 and 2e2).

E1 = vec("1/2", "1/2", 0, 0, 0, 0)
E2 = vec(0, 0, "1/4", "1/4", "1/4", "1/4")


def rayset(vectors):
    out = set()
    for v in vectors:
        nz = next(x for x in v if x != 0)
        out.add(vscale(1 / nz, v))
    return out


def test_d6_gl2_gl4_relative_structures(levi_of):
    ld = levi_of("D6", (0, 2, 3, 4))
    assert ld.iota == 2

    delta_m = {ld.rel_roots[r] for r in ld.delta_m}
    phi_m = set(ld.rel_roots)
    phi_m0, delta_m0 = map(set, reflective_roots(ld))

    e1me2 = vadd(E1, vneg(E2))
    e1pe2 = vadd(E1, E2)
    two_e1 = vscale(F(2), E1)
    two_e2 = vscale(F(2), E2)

    # exact vector content of the four displayed sets
    assert delta_m == {e1me2, two_e2}
    assert phi_m == {
        e1me2, e1pe2, two_e1, two_e2,
        vneg(e1me2), vneg(e1pe2), vneg(two_e1), vneg(two_e2),
    }
    assert phi_m0 == {two_e1, two_e2, vneg(two_e1), vneg(two_e2)}
    assert delta_m0 == {two_e1, two_e2}

    # the displayed pattern at ray level
    assert rayset(delta_m) == rayset([e1me2, E2])
    assert rayset(phi_m) == rayset([e1me2, e1pe2, E1, E2])
    assert rayset(phi_m0) == rayset([E1, vneg(E1), E2, vneg(E2)])
    assert rayset(delta_m0) == rayset([E1, E2])


def test_d6_gl2_gl4_relative_reflection(levi_of, rwg_of):
    ld = levi_of("D6", (0, 2, 3, 4))
    rwg = rwg_of("D6", (0, 2, 3, 4))
    assert len(rwg.elements) == 4
    assert len(rwg.reflection_subgroup) == 4
    assert len(rwg.chamber_stabilizer) == 1

    r_e1 = ld.rel_index[vscale(F(2), E1)]
    w = relative_reflection(ld, r_e1)
    assert w is not None
    # order two, negates the e1 ray, fixes the e2 ray
    assert compose(w.perm, w.perm) == tuple(range(len(ld.rs.roots)))
    assert ld.rs.apply_perm(w.perm, E1) == vneg(E1)
    assert ld.rs.apply_perm(w.perm, E2) == E2

    # the e1+e2 and e1-e2 rays carry no relative reflection in W_M
    for v in (vadd(E1, E2), vadd(E1, vneg(E2))):
        assert relative_reflection(ld, ld.rel_index[v]) is None


def test_relative_reflection_input_validation(levi_of):
    ld = levi_of("D6", (0, 2, 3, 4))
    with pytest.raises(SpecError):
        relative_reflection(ld, vec(1, 0, 0, 0, 0, 0))
    with pytest.raises(SpecError):
        relative_reflection(ld, 99)


# ---------------------------------------------------------------------------
# Semidirect structure over a small exhaustive sweep.

SMALL_CASES = [
    (label, theta)
    for label in ("A3", "B3", "C3", "G2", "B2")
    for size in range(4)
    for theta in combinations(range(3), size)
    if all(t < {"G2": 2, "B2": 2}.get(label, 3) for t in theta)
]


@pytest.mark.parametrize("label,theta", sorted(set(SMALL_CASES)))
def test_semidirect_properties(label, theta, rwg_of):
    rwg = rwg_of(label, tuple(theta))
    ld = rwg.ld
    n0, n1 = len(rwg.reflection_subgroup), len(rwg.chamber_stabilizer)
    assert n0 * n1 == len(rwg.elements)
    # bijection (w0, w1) -> w0 w1
    seen = set()
    for w0 in rwg.reflection_subgroup:
        for w1 in rwg.chamber_stabilizer:
            seen.add(compose(w0.perm, w1.perm))
    assert seen == set(rwg.by_perm)
    # uniqueness: descent result recomposes and is the unique factorization
    for w in rwg.elements:
        w0, w1 = rwg.factor(w)
        assert compose(w0.perm, w1.perm) == w.perm
        assert w0.perm in rwg._w0set and w1.perm in rwg._w1set
        if w in rwg.reflection_subgroup:
            assert w0 == w and w1.is_identity
        if w in rwg.chamber_stabilizer:
            assert w0.is_identity and w1 == w
    # normality of the reflection subgroup
    for w in rwg.elements:
        iv = invert(w.perm)
        for u in rwg.reflection_subgroup:
            assert compose(compose(w.perm, u.perm), iv) in rwg._w0set


@pytest.mark.parametrize("label,theta", [("B3", (0,)), ("A3", (1,)), ("D4", (1, 2))])
def test_conjugation_covariance(label, theta, rwg_of):
    rwg = rwg_of(label, theta)
    ld = rwg.ld
    for w in rwg.elements:
        iv = invert(w.perm)
        for a in ld.reflective:
            img = rwg.rel_image(w, a)
            assert ld._refl_perm[img] == compose(compose(w.perm, ld._refl_perm[a]), iv)


def test_chamber_stabilizer_fixes_positives(rwg_of):
    for label, theta in (("B3", (0,)), ("D4", (1, 2)), ("A3", ())):
        rwg = rwg_of(label, theta)
        ld = rwg.ld
        pos = set(ld.reflective_positives)
        for w in rwg.chamber_stabilizer:
            assert {rwg.rel_image(w, r) for r in pos} == pos


def test_reflective_closure(rwg_of):
    rwg = rwg_of("B3", (0,))
    ld = rwg.ld
    refl = set(ld.reflective)
    for a in ld.reflective_positives:
        for b in ld.reflective:
            img = ld.rel_image_of_perm(ld._refl_perm[a], b)
            assert img in refl


def test_theta_input_validation(rs_of):
    rs = rs_of("A3")
    with pytest.raises(SpecError):
        make_levi(rs, (7,))
    with pytest.raises(SpecError):
        make_levi(rs, (-1,))
