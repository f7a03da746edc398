"""Deterministic complex generators and majority closure."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .core import CubeComplex, to_mask, to_set

KINDS = ("path", "tripod", "tree", "grid", "product", "ell_grid", "random_median")


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate.

    ``params`` per kind: path ``(n,)`` hyperplanes; tree: parent of node
    ``i+1`` for each ``i``; grid: vertices per axis; random_median: sample count
    followed by vertices per axis. ``product`` is built with :func:`product`.
    """

    kind: str
    params: tuple = ()
    seed: int = 0


def path(n: int) -> CubeComplex:
    """A line of ``n`` edges starting at the basepoint: ``0 < 1 < ... < n-1``."""
    if n < 0:
        raise ValueError("path length must be non-negative")
    return CubeComplex.from_masks(n, [(1 << i) - 1 for i in range(n + 1)])


def tree(parents: Sequence[int]) -> CubeComplex:
    """Tree rooted at the basepoint; ``parents[i]`` is the parent of node ``i + 1``.

    Hyperplane ``i`` is the edge above node ``i + 1``.
    """
    node_masks = [0]
    for i, p in enumerate(parents):
        if not 0 <= p <= i:
            raise ValueError(f"parent of node {i + 1} must be an earlier node, got {p}")
        node_masks.append(node_masks[p] | (1 << i))
    return CubeComplex.from_masks(len(parents), node_masks)


def tripod() -> CubeComplex:
    return tree([0, 0, 0])


def _axis_offsets(sizes: Sequence[int]) -> list[int]:
    offsets, total = [], 0
    for s in sizes:
        if s < 1:
            raise ValueError("grid axes need at least one vertex")
        offsets.append(total)
        total += s - 1
    return offsets + [total]


def _grid_masks(sizes: Sequence[int]) -> tuple[int, list[int]]:
    offsets = _axis_offsets(sizes)
    masks = [0]
    for axis, s in enumerate(sizes):
        o = offsets[axis]
        masks = [m | (((1 << i) - 1) << o) for m in masks for i in range(s)]
    return offsets[-1], masks


def grid(*sizes: int) -> CubeComplex:
    """Product of paths with ``sizes[i]`` vertices along axis ``i``.

    Hyperplanes are numbered axis by axis, nearest the basepoint first.
    """
    n, masks = _grid_masks(sizes)
    return CubeComplex.from_masks(n, masks)


def product(X: CubeComplex, Y: CubeComplex) -> CubeComplex:
    """Cartesian product; ``Y``'s hyperplanes are shifted past ``X``'s."""
    shift = X.hyperplane_count
    return CubeComplex.from_masks(
        shift + Y.hyperplane_count, [a | (b << shift) for a in X.masks for b in Y.masks]
    )


ELL_GRID_LABELS = ("a1", "a2", "a3", "b1", "b2", "b3")


def ell_grid() -> CubeComplex:
    """The 3x3 grid with a unit square glued at its far corner.

    Hyperplanes ``a1, a2, a3, b1, b2, b3`` are ids 0..5; the vertex at grid
    position ``(i, j)`` is ``{a1..ai} | {b1..bj}``.
    """
    points = [(i, j) for i in range(3) for j in range(3)] + [(3, 2), (2, 3), (3, 3)]
    return CubeComplex.from_masks(6, [((1 << i) - 1) | (((1 << j) - 1) << 3) for i, j in points])


def _check_grid_vertex(mask: int, sizes: Sequence[int]):
    offsets = _axis_offsets(sizes)
    if mask >> offsets[-1]:
        raise ValueError(f"{sorted(to_set(mask))} uses hyperplanes outside the ambient grid")
    for axis in range(len(sizes)):
        width = offsets[axis + 1] - offsets[axis]
        part = (mask >> offsets[axis]) & ((1 << width) - 1)
        if part & (part + 1):
            raise ValueError(f"{sorted(to_set(mask))} is not a vertex of the ambient grid")


def median_closure(ambient_dims: Sequence[int], seeds: Iterable) -> set[frozenset]:
    """Smallest majority-closed family containing ``seeds`` and the basepoint.

    ``seeds`` are vertices of the grid with ``ambient_dims[i]`` vertices per
    axis, given as id sets in that grid's hyperplane numbering.
    """
    masks = [0]
    for s in seeds:
        m = s if isinstance(s, int) else to_mask(s)
        _check_grid_vertex(m, ambient_dims)
        masks.append(m)
    width = _axis_offsets(ambient_dims)[-1]
    return {to_set(m) for m in kernels.majority_closure(masks, width)}


def canonical_complex(hyperplane_count: int, masks: Iterable[int]) -> CubeComplex:
    """Drop hyperplanes no vertex uses, merge ones that split the vertices identically, relabel."""
    masks = list(dict.fromkeys(masks))
    sides: dict[int, int] = {}
    for h in range(hyperplane_count):
        side = 0
        for i, m in enumerate(masks):
            if m >> h & 1:
                side |= 1 << i
        if side and side not in sides:
            sides[side] = h
    kept = sorted(sides.values())
    out = []
    for m in masks:
        c = 0
        for new, old in enumerate(kept):
            if m >> old & 1:
                c |= 1 << new
        out.append(c)
    return CubeComplex.from_masks(len(kept), out)


def random_median(sizes: Sequence[int], samples: int, seed: int) -> CubeComplex:
    """Majority closure of ``samples`` seeded uniform grid vertices, made canonical."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    offsets = _axis_offsets(sizes)
    seeds = []
    for _ in range(samples):
        m = 0
        for axis, s in enumerate(sizes):
            m |= ((1 << rng.randrange(s)) - 1) << offsets[axis]
        seeds.append(m)
    closed = kernels.majority_closure([0] + seeds, offsets[-1])
    return canonical_complex(offsets[-1], closed)


def generate(spec: GeneratorSpec) -> CubeComplex:
    kind, params = spec.kind, tuple(spec.params)
    if kind == "path":
        return path(*params)
    if kind == "tripod":
        return tripod()
    if kind == "tree":
        return tree(params)
    if kind == "grid":
        return grid(*params)
    if kind == "ell_grid":
        return ell_grid()
    if kind == "random_median":
        if len(params) < 2:
            raise ValueError("random_median needs a sample count and at least one axis size")
        return random_median(params[1:], params[0], spec.seed)
    if kind == "product":
        if len(params) != 2:
            raise ValueError("product needs two GeneratorSpecs")
        return product(generate(params[0]), generate(params[1]))
    raise ValueError(f"unknown generator kind {kind!r}")


def random_tree_parents(nodes: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(i + 1) for i in range(nodes - 1)]


def standard_suite() -> dict[str, CubeComplex]:
    """The fixed family of instances used by the acceptance tests."""
    suite: dict[str, CubeComplex] = {}
    for n in range(1, 7):
        suite[f"path({n})"] = path(n)
    suite["tripod"] = tripod()
    suite["tree-star6"] = tree([0] * 6)
    suite["tree-binary15"] = tree([i // 2 for i in range(14)])
    suite["tree-caterpillar12"] = tree([0, 1, 1, 2, 2, 3, 4, 4, 5, 6, 6])
    for seed in (1, 2, 3):
        suite[f"tree-random20-s{seed}"] = tree(random_tree_parents(20, seed))
    suite["grid(3,3)"] = grid(3, 3)
    suite["grid(4,4)"] = grid(4, 4)
    suite["grid(3,3,3)"] = grid(3, 3, 3)
    suite["ell_grid"] = ell_grid()
    for sizes, samples, seed in RANDOM_MEDIAN_SUITE:
        name = "x".join(map(str, sizes))
        suite[f"random_median-{name}-k{samples}-s{seed}"] = random_median(sizes, samples, seed)
    return suite


# (vertices per axis, sample count, seed): 4 to 12 hyperplanes, flatness 1 to 5
RANDOM_MEDIAN_SUITE = [
    ((5, 5), 6, 1), ((6, 6), 10, 1), ((7, 7), 8, 1), ((7, 7), 10, 1),
    ((4, 4, 3), 6, 1), ((4, 4, 3), 10, 0), ((4, 4, 4), 6, 1), ((4, 4, 4), 10, 1),
    ((5, 4, 3), 6, 0), ((5, 4, 3), 10, 1), ((3, 3, 3, 3), 6, 0), ((3, 3, 3, 3), 8, 1),
    ((4, 3, 3, 3), 8, 0), ((3, 3, 3, 3, 3), 8, 0), ((3, 3, 3, 3, 3), 10, 1), ((5, 5, 5), 10, 0),
    ((4, 4, 4, 3), 12, 0), ((4, 4, 3, 3), 14, 2), ((3, 3, 3, 3, 3), 10, 0), ((3, 3, 3, 3, 3, 3), 12, 2),
]
