from fractions import Fraction as F

import pytest

from ccdim import (
    CubePoint,
    cobornology_audit,
    colour,
    contract_pipeline,
    descend_zero,
    embed,
    lipschitz_ratio,
    phi,
    psi,
    quotient,
    weight,
)
from ccdim.contraction import ContractionStep, cobornology_profile, select_tracked
from ccdim.errors import PointNotInComplex
from ccdim.generators import random_median, standard_suite

import oracles

fs = frozenset


def test_quotient_examples(path3, grid33):
    q = quotient(grid33, range(4))
    assert q.quotient.vertices == grid33.vertices
    assert all(k == v for k, v in q.pi.items())
    q = quotient(grid33, [1, 3])
    assert q.quotient.vertex_count == 4 and q.quotient.dimension == 2
    assert q.pi[fs({0, 2})] == fs() and q.image([0, 1, 2]) == fs({0})
    q = quotient(path3, [1])
    assert q.quotient.vertex_count == 2
    assert q.pi[fs()] == q.pi[fs({0})] == fs()
    with pytest.raises(ValueError):
        quotient(path3, [7])


def test_weight_examples(path3, grid33):
    c = colour(grid33)
    assert weight(grid33, c, 2, 1, 1) == F(2, 3)
    c = colour(path3)
    assert weight(path3, c, 1, 1, 2) == F(1, 2)
    assert weight(path3, c, 1, 1, 0) == 0
    with pytest.raises(ValueError):
        weight(path3, c, 1, 0, 0)


def test_psi_phi_examples(path3, grid33):
    c = colour(path3)
    assert psi(path3, c, 1, embed(path3, [])) == CubePoint({})
    assert psi(path3, c, 1, embed(path3, [0, 1, 2])) == CubePoint({1: 1})
    images = [phi(path3, c, 1, embed(path3, v)) for v in path3.vertices]
    assert [p[0] for p in images] == [0, 0, F(1, 2), 1]
    assert lipschitz_ratio(images, path3.vertices, path3) == F(1, 2)

    c = colour(grid33)
    assert psi(grid33, c, 2, embed(grid33, [0, 1, 2])) == CubePoint({1: F(2, 3)})
    assert phi(grid33, c, 2, embed(grid33, range(4))) == CubePoint({0: F(2, 3), 1: F(2, 3)})
    images = [phi(grid33, c, 2, embed(grid33, v)) for v in grid33.vertices]
    assert lipschitz_ratio(images, grid33.vertices, grid33) == F(2, 3)
    with pytest.raises(PointNotInComplex):
        psi(grid33, c, 2, CubePoint({1: F(1, 2)}))


def test_lipschitz_ratio_edge_cases(path3):
    same = [CubePoint({})] * 4
    assert lipschitz_ratio(same, path3.vertices, path3) == 0
    with pytest.raises(ValueError):
        lipschitz_ratio(same[:2], path3.vertices, path3)


def test_descend_zero(grid33, path3):
    assert descend_zero(grid33, colour(grid33), [0, 1]) == fs({0})
    assert descend_zero(path3, colour(path3), [0, 1]) == fs({0})
    assert descend_zero(path3, colour(path3), []) == fs()


def test_cobornology_examples(path3, grid33):
    q = quotient(path3, [1])
    a = cobornology_audit(path3, q, 1, 0)
    assert (a.max_source_distance, a.bound, a.passed) == (1, 4, True)
    q = quotient(grid33, [1, 3])
    a = cobornology_audit(grid33, q.pi, 2, 0)
    assert (a.max_source_distance, a.bound) == (2, 6)
    ident = quotient(grid33, range(4))
    for a in cobornology_profile(grid33, ident, 2):
        assert a.max_source_distance <= a.R <= a.bound


def test_weights_and_psi_match_oracle():
    for name, X in list(standard_suite().items())[::3]:
        n, vs = X.hyperplane_count, list(X.vertices)
        c = colour(X)
        step = ContractionStep(X, c)
        for h in step.zero:
            for k in X.hyperplanes:
                assert step.weight(h, k) == oracles.brute_weight(n, vs, c.colours, step.l, h, k), name
        for v in vs[:40]:
            expected = oracles.brute_psi(n, vs, c.colours, step.l, {h: 1 for h in v})
            assert dict(step.psi(embed(X, v)).items()) == expected, name


def test_pipeline_segment(segment):
    r = contract_pipeline(segment, F(1, 2))
    assert len(r.rounds) == 1 and r.rounds[0].control == 1
    assert r.composite_factor == F(1, 2) and r.collapsed and r.passed


def test_pipeline_grid(grid33):
    r = contract_pipeline(grid33, "1/2")
    assert [x.factor for x in r.rounds] == [F(2, 3), F(2, 3)]
    assert r.rounds[0].quotient_hyperplane_count == 2
    assert r.rounds[1].colouring.colours == (1, 1)
    assert r.collapsed and r.composite_measured == 0 and r.status == "reached"
    assert r.to_json()["composite_factor"] == "4/9"
    assert "PASS" in r.to_text()


def test_pipeline_ell(ell):
    r = contract_pipeline(ell, F(3, 10))
    assert len(r.rounds) <= 4 and r.passed
    assert all(x.quotient_dimension <= 2 for x in r.rounds)


def test_pipeline_rounds_exhausted(grid33):
    r = contract_pipeline(grid33, F(1, 100), max_rounds=1)
    assert r.status == "rounds_exhausted" and not r.passed
    with pytest.raises(ValueError):
        contract_pipeline(grid33, F(3, 2))


def test_tracking_modes():
    X = random_median((4, 4, 3), 10, 0)
    assert len(select_tracked(X, "all")) == X.vertex_count
    picked = select_tracked(X, "sample:5", seed=3)
    assert len(picked) == 5 and picked == select_tracked(X, "sample:5", seed=3)
    r = contract_pipeline(X, F(1, 4), track="sample:6", seed=1)
    assert len(r.images) == 6 and r.lipschitz_ok
    with pytest.raises(ValueError):
        select_tracked(X, "some")
