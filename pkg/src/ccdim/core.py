"""Finite CAT(0) cube complexes encoded by vertex halfspace sets.

A vertex is the set of hyperplanes separating it from the basepoint (the empty
set). Internally vertices are ``int`` bitmasks over hyperplane ids, and every
per-hyperplane table (positive sides, nesting, crossing) is a bitmask too.
"""
from __future__ import annotations

import enum
from collections import deque
from functools import cached_property
from typing import Iterable

from . import kernels
from .errors import (
    AmbiguousGate,
    ComplexError,
    Disconnected,
    DuplicateVertex,
    IdOutOfRange,
    ImproperHyperplane,
    MissingBasepoint,
    NotMedianClosed,
)

Vertex = frozenset


class Relation(enum.Enum):
    """How two distinct hyperplanes ``h, k`` sit relative to each other."""

    CROSSES = "crosses"
    LESS = "less"  # h < k: h separates the basepoint from k
    GREATER = "greater"  # k < h
    OPPOSITE = "opposite"


def to_mask(ids: Iterable[int]) -> int:
    mask = 0
    for h in ids:
        mask |= 1 << h
    return mask


def to_set(mask: int) -> frozenset:
    out = []
    h = 0
    while mask:
        if mask & 1:
            out.append(h)
        mask >>= 1
        h += 1
    return frozenset(out)


def bits(mask: int) -> list[int]:
    """Set bit positions of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def majority(a: int, b: int, c: int) -> int:
    return (a & b) | (b & c) | (a & c)


class CubeComplex:
    """Validated, immutable finite cube complex.

    Build instances with :func:`build_complex` or :meth:`from_masks`. Vertices
    are stored sorted by (size, mask), so index 0 is the basepoint and any
    inward edge goes from a higher index to a lower one.
    """

    def __init__(self, hyperplane_count: int, masks: Iterable[int]):
        if hyperplane_count < 0:
            raise ComplexError("hyperplane_count must be non-negative")
        n = hyperplane_count
        seen: dict[int, None] = {}
        for m in masks:
            if m < 0 or m >> n:
                raise IdOutOfRange(max(bits(m)) if m > 0 else m, n)
            if m in seen:
                raise DuplicateVertex(to_set(m))
            seen[m] = None
        if 0 not in seen:
            raise MissingBasepoint()

        self.hyperplane_count = n
        self.masks: tuple[int, ...] = tuple(sorted(seen, key=lambda m: (m.bit_count(), m)))
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.masks)}
        self.all_vertices = (1 << len(self.masks)) - 1

        positive = [0] * n
        for i, m in enumerate(self.masks):
            for h in bits(m):
                positive[h] |= 1 << i
        for h, side in enumerate(positive):
            if not side:
                raise ImproperHyperplane(h)
        self.positive: tuple[int, ...] = tuple(positive)

        self._check_connected()
        witness = kernels.majority_witness(self.masks, n)
        if witness is not None:
            raise NotMedianClosed(*(to_set(self.masks[i]) for i in witness))
        self._build_relations()

    @classmethod
    def from_masks(cls, hyperplane_count: int, masks: Iterable[int]) -> "CubeComplex":
        return cls(hyperplane_count, masks)

    def _check_connected(self):
        reached = {0}
        queue = deque([0])
        while queue:
            m = queue.popleft()
            for h in range(self.hyperplane_count):
                nb = m ^ (1 << h)
                if nb in self.index and nb not in reached:
                    reached.add(nb)
                    queue.append(nb)
        if len(reached) != len(self.masks):
            raise Disconnected(len(self.masks) - len(reached))

    def _build_relations(self):
        n = self.hyperplane_count
        full = self.all_vertices
        below = [0] * n
        above = [0] * n
        cross = [0] * n
        opposite = [0] * n
        for h in range(n):
            ph = self.positive[h]
            for k in range(h + 1, n):
                pk = self.positive[k]
                both = ph & pk
                h_only = ph & ~pk
                k_only = pk & ~ph
                neither = full & ~(ph | pk)
                verdicts = (
                    bool(both and h_only and k_only and neither),
                    bool(both and h_only and not k_only),  # V_k strictly inside V_h
                    bool(both and k_only and not h_only),
                    not both,
                )
                if sum(verdicts) != 1:
                    raise ComplexError(f"hyperplanes {h}, {k} satisfy {sum(verdicts)} relations")
                if verdicts[0]:
                    cross[h] |= 1 << k
                    cross[k] |= 1 << h
                elif verdicts[1]:
                    above[h] |= 1 << k
                    below[k] |= 1 << h
                elif verdicts[2]:
                    above[k] |= 1 << h
                    below[h] |= 1 << k
                else:
                    opposite[h] |= 1 << k
                    opposite[k] |= 1 << h
        self.below: tuple[int, ...] = tuple(below)
        self.above: tuple[int, ...] = tuple(above)
        self.cross: tuple[int, ...] = tuple(cross)
        self.opposite: tuple[int, ...] = tuple(opposite)

    # -- basic accessors --------------------------------------------------

    def __repr__(self):
        return f"CubeComplex(hyperplanes={self.hyperplane_count}, vertices={len(self.masks)})"

    @property
    def hyperplanes(self) -> range:
        return range(self.hyperplane_count)

    @cached_property
    def vertices(self) -> tuple[frozenset, ...]:
        return tuple(to_set(m) for m in self.masks)

    @property
    def vertex_count(self) -> int:
        return len(self.masks)

    def vertex_mask(self, x: Iterable[int]) -> int:
        m = x if isinstance(x, int) else to_mask(x)
        if m not in self.index:
            raise ValueError(f"{sorted(to_set(m))} is not a vertex")
        return m

    def __contains__(self, x) -> bool:
        return to_mask(x) in self.index

    def positive_set(self, h: int) -> set[frozenset]:
        """The vertices on the side of ``h`` away from the basepoint."""
        return {self.vertices[i] for i in bits(self.positive[h])}

    # -- relations ----------------------------------------------------------

    def relation(self, h: int, k: int) -> Relation:
        if h == k:
            raise ValueError("relation needs two distinct hyperplanes")
        bit = 1 << k
        if self.cross[h] & bit:
            return Relation.CROSSES
        if self.above[h] & bit:
            return Relation.LESS
        if self.below[h] & bit:
            return Relation.GREATER
        return Relation.OPPOSITE

    def less(self, k: int, h: int) -> bool:
        """True when ``k < h``."""
        return bool(self.below[h] >> k & 1)

    @cached_property
    def predecessor_masks(self) -> tuple[int, ...]:
        out = []
        for h in self.hyperplanes:
            covered = 0
            for j in bits(self.below[h]):
                covered |= self.below[j]
            out.append(self.below[h] & ~covered)
        return tuple(out)

    def predecessors(self, h: int) -> frozenset:
        return to_set(self.predecessor_masks[h])

    # -- vertex queries -------------------------------------------------------

    def distance(self, x, y) -> int:
        return (self.vertex_mask(x) ^ self.vertex_mask(y)).bit_count()

    def median(self, x, y, z) -> frozenset:
        m = majority(self.vertex_mask(x), self.vertex_mask(y), self.vertex_mask(z))
        return to_set(m)

    def interval(self, x, y) -> set[frozenset]:
        a, b = self.vertex_mask(x), self.vertex_mask(y)
        lo, hi = a & b, a | b
        return {to_set(m) for m in self.masks if m & lo == lo and m | hi == hi}

    @cached_property
    def inward_masks(self) -> tuple[int, ...]:
        """Per vertex index, the bitmask of hyperplanes crossed by its inward edges."""
        out = []
        for m in self.masks:
            hs = 0
            for h in bits(m):
                if m ^ (1 << h) in self.index:
                    hs |= 1 << h
            out.append(hs)
        return tuple(out)

    def adjacent_inward_set(self, x) -> frozenset:
        return to_set(self.inward_masks[self.index[self.vertex_mask(x)]])

    @cached_property
    def gates(self) -> tuple[int, ...]:
        """Per hyperplane, the mask of the closest vertex on its positive side."""
        out = []
        for h in self.hyperplanes:
            side = self.positive[h]
            first = (side & -side).bit_length() - 1
            best = self.masks[first]
            rest = side & ~(1 << first)
            if rest:
                second = self.masks[(rest & -rest).bit_length() - 1]
                if second.bit_count() == best.bit_count():
                    ties = [to_set(self.masks[i]) for i in bits(side)
                            if self.masks[i].bit_count() == best.bit_count()]
                    raise AmbiguousGate(h, ties)
            out.append(best)
        return tuple(out)

    def gate_vertex(self, h: int) -> tuple[frozenset, frozenset]:
        x = self.gates[h]
        return to_set(x), to_set(x & ~(1 << h))

    # -- global invariants ----------------------------------------------------

    @cached_property
    def dimension(self) -> int:
        return kernels.max_clique(self.cross, (1 << self.hyperplane_count) - 1)

    @cached_property
    def distance_matrix(self):
        """``numpy`` array of pairwise vertex distances, indexed like ``masks``."""
        return kernels.pairwise_hamming(self.masks, self.hyperplane_count)

    @cached_property
    def diameter(self) -> int:
        if len(self.masks) < 2:
            return 0
        return int(self.distance_matrix.max())

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Hyperplanes ordered so that ``k < h`` puts ``k`` first."""
        return tuple(sorted(self.hyperplanes, key=lambda h: (self.below[h].bit_count(), h)))

    @cached_property
    def pair_lengths(self) -> dict[tuple[int, int], int]:
        """Length of the longest chain ``h = h0 < ... < hl = k`` for every pair ``h < k``."""
        lengths: dict[tuple[int, int], int] = {}
        for k in self.linear_extension:
            for h in bits(self.below[k]):
                best = 0
                for j in bits(self.predecessor_masks[k]):
                    if j == h:
                        best = max(best, 1)
                    elif self.below[j] >> h & 1:
                        best = max(best, lengths[h, j] + 1)
                lengths[h, k] = best
        return lengths


def build_complex(hyperplane_count: int, vertex_sets: Iterable[Iterable[int]]) -> CubeComplex:
    """Validate a vertex family and return the cube complex it describes.

    >>> build_complex(2, [[], [0], [1], [0, 1]]).relation(0, 1)
    <Relation.CROSSES: 'crosses'>
    """
    masks = []
    for vs in vertex_sets:
        vs = list(vs)
        for h in vs:
            if not 0 <= h < hyperplane_count:
                raise IdOutOfRange(h, hyperplane_count)
        masks.append(to_mask(vs))
    return CubeComplex(hyperplane_count, masks)
