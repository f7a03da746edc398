"""Corners, d-ranks, rank vectors and flatness.

Relations inside a class of hyperplanes are the restriction of the ambient
relation table, so the quotient complexes used by the rank recursion are
never materialised.
"""
from __future__ import annotations

from typing import Iterable

from . import kernels
from .core import CubeComplex, bits, to_mask
from .errors import NonTermination

RankVector = tuple


def _subset_mask(X: CubeComplex, subset) -> int:
    if subset is None:
        return (1 << X.hyperplane_count) - 1
    if isinstance(subset, int):
        return subset
    return to_mask(subset)


def in_d_corner(X: CubeComplex, h: int, d: int, subset: Iterable[int] | int | None = None) -> bool:
    """Whether ``h`` lies in a corner cut out by ``d`` pairwise crossing members of ``subset``.

    ``subset`` defaults to every hyperplane of ``X``.
    """
    if d < 2:
        raise ValueError("corners need d >= 2")
    candidates = X.below[h] & _subset_mask(X, subset)
    return kernels.has_clique(X.cross, candidates, d)


def _d_rank_masks(X: CubeComplex, d: int, subset: int) -> dict[int, int]:
    ranks: dict[int, int] = {}
    current = subset
    level = 0
    while current:
        survivors = 0
        for h in bits(current):
            if kernels.has_clique(X.cross, X.below[h] & current, d):
                survivors |= 1 << h
        if survivors == current:
            raise NonTermination(f"{d}-rank stratum {level} failed to shrink")
        for h in bits(current & ~survivors):
            ranks[h] = level
        current = survivors
        level += 1
    return ranks


def d_ranks(X: CubeComplex, d: int, subset: Iterable[int] | int | None = None) -> dict[int, int]:
    """Depth of each hyperplane of ``subset`` in the nested d-corner strata."""
    if d < 2:
        raise ValueError("d-ranks need d >= 2")
    return _d_rank_masks(X, d, _subset_mask(X, subset))


def rank_vectors(X: CubeComplex) -> dict[int, RankVector]:
    """Rank vector ``(n_D, ..., n_2)`` of every hyperplane, ``D = X.dimension``.

    At each level the current classes are split by their d-rank computed
    inside the class. Complexes of dimension at most one get empty vectors.
    """
    classes: dict[tuple, int] = {(): (1 << X.hyperplane_count) - 1}
    for d in range(X.dimension, 1, -1):
        refined: dict[tuple, int] = {}
        for prefix, members in classes.items():
            for h, r in _d_rank_masks(X, d, members).items():
                key = prefix + (r,)
                refined[key] = refined.get(key, 0) | (1 << h)
        classes = refined
    return {h: vec for vec, members in classes.items() for h in bits(members)}


def rank_classes(X: CubeComplex, vectors: dict[int, RankVector]) -> dict[tuple, frozenset]:
    """Every prefix class ``H_(n_D,...,n_d)`` keyed by its (non-empty) prefix."""
    out: dict[tuple, set] = {}
    for h, vec in vectors.items():
        for cut in range(1, len(vec) + 1):
            out.setdefault(vec[:cut], set()).add(h)
    return {k: frozenset(v) for k, v in out.items()}


def flatness(X: CubeComplex) -> int:
    """Least ``d >= 1`` such that no hyperplane lies in a (d+1)-corner."""
    deepest = 0
    for h in X.hyperplanes:
        deepest = max(deepest, kernels.max_clique(X.cross, X.below[h]))
    return max(1, deepest)
