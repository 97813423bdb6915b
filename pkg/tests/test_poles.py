from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gpseries import (
    InducingDatum,
    SpecError,
    coroot_system,
    derive_walls,
    exponent_is_regular,
    independence_stress_test,
    obtuseness_check,
    orient_walls,
    verify_linear_independence,
)
from gpseries.cartan import cartan_pairing
from gpseries.poles import (
    dual_dominance_basis,
    sample_dominant_exponent,
    sample_poles,
    validate_exponent,
)

F = Fraction


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def test_independence_trivial_cases():
    indep = verify_linear_independence([vec(1, -1, 0), vec(0, 1, -1)])
    assert indep.independent and indep.echelon is not None
    dep = verify_linear_independence([vec(1, -1, 0), vec(0, 1, -1), vec(1, 0, -1)])
    assert not dep.independent
    # certificate really vanishes and is proportional to (1, 1, -1)
    c = dep.relation
    assert c is not None
    scale = c[0]
    assert scale != 0
    assert tuple(x / scale for x in c) == (F(1), F(1), F(-1))


def test_independence_f4_scenario():
    # two long coroots and two admissible short ones: rank four
    vecs = [
        vec(1, -1, 0, 0),
        vec(0, 1, -1, 0),
        vec("1/2", "1/2", "1/2", "1/2"),
        vec(-1, 0, 0, 0),
    ]
    assert verify_linear_independence(vecs).independent


def test_derive_walls_a1(levi_of, rwg_of):
    ld = levi_of("A1", ())
    rwg = rwg_of("A1", ())
    alpha = ld.rel_roots[ld.rel_positives[0]]
    omega = tuple(x / 2 for x in alpha)  # <omega, alpha^vee> = 1
    datum = InducingDatum(omega=omega, poles={"orbit0": F(1)})
    walls = derive_walls(ld, rwg, datum)
    assert [ld.rel_roots[r] for r in walls.rel_indices] == [alpha]
    # a pole nothing attains: empty wall set
    datum2 = InducingDatum(omega=omega, poles={"orbit0": F(5)})
    assert len(derive_walls(ld, rwg, datum2)) == 0
    # zero exponent: strictly positive poles are never attained
    zero = tuple(F(0) for _ in alpha)
    datum3 = InducingDatum(omega=zero, poles={"orbit0": F(1)})
    assert len(derive_walls(ld, rwg, datum3)) == 0


def test_derive_walls_rejects_bad_input(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    down = tuple(-x for x in ld.p0)
    with pytest.raises(SpecError, match="dominant"):
        derive_walls(ld, rwg, InducingDatum(omega=down, poles={"orbit0": F(1)}))
    ok = ld.p0
    with pytest.raises(SpecError, match="orbit"):
        derive_walls(ld, rwg, InducingDatum(omega=ok, poles={"orbitX": F(1)}))
    with pytest.raises(SpecError, match="positive"):
        derive_walls(ld, rwg, InducingDatum(omega=ok, poles={"orbit0": F(-1)}))
    with pytest.raises(SpecError):
        validate_exponent(ld, vec(1, 0, 0))  # wrong dimension


def test_exponent_outside_a_star_rejected(levi_of):
    ld = levi_of("D6", (0, 2, 3, 4))
    with pytest.raises(SpecError, match="a_M"):
        validate_exponent(ld, vec(1, 0, 0, 0, 0, 0))


def test_regularity_a2_spec_example(levi_of, rwg_of):
    # equal pairings on both simple coroots: the full coroot system still
    # pairs nowhere to zero, so regularity holds
    ld = levi_of("A2", ())
    rwg = rwg_of("A2", ())
    basis = dual_dominance_basis(ld)
    omega = tuple(a + b for a, b in zip(basis[0], basis[1]))  # pairings (1,1)
    datum = InducingDatum(omega=omega, poles={"orbit0": F(1)})
    walls = derive_walls(ld, rwg, datum)
    assert len(walls) == 2
    gen = coroot_system(ld, walls)
    assert len(gen) == 6
    assert exponent_is_regular(ld, omega, gen)
    assert verify_linear_independence(walls.coroot_vectors(ld)).independent


def test_regularity_failure_detected(levi_of, rwg_of):
    # B2 with omega = e1: pairing zero against e2^vee inside the generated
    # system: regularity fails and the derived walls may be dependent
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    omega = vec(1, 0)
    datum = InducingDatum(omega=omega, poles={"orbit0": F(1), "orbit1": F(2)})
    walls = derive_walls(ld, rwg, datum)
    assert len(walls) == 3  # (e1-e2), (e1+e2), e1 walls all hit
    gen = coroot_system(ld, walls)
    assert not exponent_is_regular(ld, omega, gen)
    assert not verify_linear_independence(walls.coroot_vectors(ld)).independent


def test_coroot_system_closure(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    from gpseries.arrangement import WallSet

    walls = WallSet.make(ld, ld.reflective_simples)
    gen = coroot_system(ld, walls)
    # closed under each wall reflection
    for r in walls.rel_indices:
        perm = ld._refl_perm[r]
        assert {ld.rel_image_of_perm(perm, x) for x in gen} == set(gen)


def test_obtuseness():
    from gpseries.poles import OrientedWalls

    # same length, non-positive pairing: fine
    class FakeLd:
        rel_roots = [vec(1, -1, 0), vec(0, 1, -1), vec(1, 0, -1)]

    ok = OrientedWalls((0, 1), {})
    assert obtuseness_check(FakeLd, ok)
    bad = OrientedWalls((0, 2), {})  # pairing +1, same length
    assert not obtuseness_check(FakeLd, bad)
    assert obtuseness_check(FakeLd, OrientedWalls((0,), {}))


def test_orient_walls_splits_by_pole(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    omega = ld.vec_from_basis([F(2), F(3)])
    datum = InducingDatum(omega=omega, poles={"orbit0": F(1), "orbit1": F(2)})
    walls = derive_walls(ld, rwg, datum)
    oriented = orient_walls(ld, omega, walls)
    assert len(oriented.items) == 2
    assert {k for k in oriented.by_pole} == {F(1), F(2)}
    assert obtuseness_check(ld, oriented)


def test_g2_two_orbit_poles(levi_of, rwg_of):
    # search rational dominants realizing both orbit poles with regularity:
    # each orbit then contributes exactly one wall
    ld = levi_of("G2", ())
    rwg = rwg_of("G2", ())
    orbits = rwg.orbits()
    assert len(orbits) == 2
    found = 0
    rng = random.Random(12345)
    for _ in range(400):
        omega = sample_dominant_exponent(ld, rng, bound=12, zero_prob=0.0)
        poles = sample_poles(ld, rwg, omega, rng, hit_prob=1.0)
        walls = derive_walls(ld, rwg, InducingDatum(omega=omega, poles=poles))
        if not walls.rel_indices:
            continue
        gen = coroot_system(ld, walls)
        if not exponent_is_regular(ld, omega, gen):
            continue
        keys = [rwg.orbit_key_of(r) for r in walls.rel_indices]
        if set(keys) == {"orbit0", "orbit1"}:
            found += 1
            assert keys.count("orbit0") == 1
            assert keys.count("orbit1") == 1
            assert verify_linear_independence(walls.coroot_vectors(ld)).independent
    assert found > 0


@pytest.mark.parametrize("label", ["A1", "B2"])
def test_stress_small(label, levi_of, rwg_of):
    ld = levi_of(label, ())
    rwg = rwg_of(label, ())
    rep = independence_stress_test(ld, rwg, 500, 0)
    assert rep.ok
    assert rep.nonempty > 0
    assert rep.regular > 0
    if label == "A1":
        assert rep.max_walls <= 1
    # report serializes
    doc = rep.to_json()
    assert doc["violations"] == []
    assert doc["trials"] == 500


def test_stress_empty_trials(levi_of, rwg_of):
    ld = levi_of("A1", ())
    rwg = rwg_of("A1", ())
    rep = independence_stress_test(ld, rwg, 0, 0)
    assert rep.ok and rep.nonempty == 0 and rep.elapsed >= 0


def test_stress_needs_reflective_roots(levi_of, rwg_of):
    ld = levi_of("D4", (1, 2))
    rwg = rwg_of("D4", (1, 2))
    with pytest.raises(SpecError):
        independence_stress_test(ld, rwg, 10, 0)


def test_stress_deterministic(levi_of, rwg_of):
    ld = levi_of("B2", ())
    rwg = rwg_of("B2", ())
    a = independence_stress_test(ld, rwg, 300, 7)
    b = independence_stress_test(ld, rwg, 300, 7)
    assert (a.nonempty, a.regular, a.max_walls) == (b.nonempty, b.regular, b.max_walls)


def test_dominant_sampling_is_dominant(levi_of):
    for label, theta in (("B3", ()), ("D6", (0, 2, 3, 4)), ("G2", (1,))):
        ld = levi_of(label, theta)
        rng = random.Random(3)
        basis = dual_dominance_basis(ld)
        for k, b in enumerate(basis):
            for j, d in enumerate(ld.delta_m):
                assert cartan_pairing(b, ld.rel_roots[d]) == (1 if j == k else 0)
        for _ in range(20):
            omega = sample_dominant_exponent(ld, rng)
            validate_exponent(ld, omega)
