from __future__ import annotations

from fractions import Fraction

import pytest

from gpseries import ratlin


def F(x):
    return Fraction(x)


def test_rref_identity():
    rows = [[F(2), F(0)], [F(0), F(3)]]
    red, pivots = ratlin.rref(rows)
    assert red == [[F(1), F(0)], [F(0), F(1)]]
    assert pivots == [0, 1]


def test_rank_and_nullspace():
    rows = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert ratlin.rank(rows) == 2
    ns = ratlin.nullspace(rows)
    assert len(ns) == 1
    for row in rows:
        assert ratlin.dot(row, ns[0]) == 0


def test_solve_consistent_and_inconsistent():
    rows = [[F(1), F(1)], [F(1), F(-1)]]
    x = ratlin.solve(rows, [F(3), F(1)])
    assert x == (F(2), F(1))
    rows2 = [[F(1), F(1)], [F(2), F(2)]]
    assert ratlin.solve(rows2, [F(1), F(3)]) is None


def test_inverse_round_trip():
    rows = [[F(2), F(1)], [F(1), F(1)]]
    inv = ratlin.inverse(rows)
    prod = [
        [ratlin.dot(rows[i], [inv[k][j] for k in range(2)]) for j in range(2)]
        for i in range(2)
    ]
    assert prod == [[F(1), F(0)], [F(0), F(1)]]
    with pytest.raises(ValueError):
        ratlin.inverse([[F(1), F(2)], [F(2), F(4)]])


def test_dependency_certificate():
    vecs = [(F(1), F(0)), (F(0), F(1)), (F(1), F(1))]
    rel = ratlin.dependency(vecs)
    assert rel is not None
    combo = ratlin.zero_vec(2)
    for c, v in zip(rel, vecs):
        combo = ratlin.vadd(combo, ratlin.vscale(c, v))
    assert ratlin.is_zero(combo)
    assert not all(c == 0 for c in rel)
    assert ratlin.dependency([(F(1), F(0)), (F(0), F(1))]) is None
