from ccdim import d_ranks, flatness, in_d_corner, rank_vectors
from ccdim.generators import random_median, standard_suite
from ccdim.rank import rank_classes

import oracles
from conftest import A1, A2, A3, B1, B2, B3


def test_corner_examples(segment, ell, grid33):
    assert not in_d_corner(segment, 0, 2)
    assert in_d_corner(ell, A3, 2)
    assert not in_d_corner(grid33, 1, 2)
    assert not in_d_corner(ell, A3, 2, subset={A2, A3})


def test_d_rank_examples(ell, grid33, path3):
    assert d_ranks(ell, 2) == {A1: 0, A2: 0, A3: 1, B1: 0, B2: 0, B3: 1}
    assert set(d_ranks(grid33, 2).values()) == {0}
    assert set(d_ranks(ell, 3).values()) == {0}
    assert set(d_ranks(path3, 5).values()) == {0}


def test_rank_vector_examples(path3, grid33, ell):
    assert rank_vectors(path3) == {0: (), 1: (), 2: ()}
    assert set(rank_vectors(grid33).values()) == {(0,)}
    assert rank_vectors(ell) == {A1: (0,), A2: (0,), A3: (1,), B1: (0,), B2: (0,), B3: (1,)}


def test_flatness_examples(segment, grid33, ell):
    assert flatness(segment) == 1
    assert flatness(grid33) == 1
    assert flatness(ell) == 2


def test_against_oracle_on_suite():
    for name, X in standard_suite().items():
        n, vs = X.hyperplane_count, list(X.vertices)
        if n > 12:
            continue
        assert rank_vectors(X) == oracles.brute_rank_vectors(n, vs), name
        assert flatness(X) == oracles.brute_flatness(n, vs), name
        for d in range(2, X.dimension + 1):
            assert d_ranks(X, d) == oracles.brute_d_ranks(n, vs, d, range(n)), name


def test_rank_classes(ell):
    classes = rank_classes(ell, rank_vectors(ell))
    assert classes[(0,)] == frozenset({A1, A2, B1, B2})
    assert classes[(1,)] == frozenset({A3, B3})


def test_high_flatness_instance():
    X = random_median((3,) * 6, 12, 2)
    assert flatness(X) == 5
    assert flatness(X) <= X.dimension
