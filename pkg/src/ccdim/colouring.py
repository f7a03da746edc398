"""Two-colourings of hyperplanes with controlled monochromatic inward paths."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import CubeComplex, bits, to_mask, to_set
from .errors import NotAPath
from .rank import RankVector, flatness, rank_classes, rank_vectors


@dataclass(frozen=True)
class Colouring:
    """Colour of every hyperplane (indexed by id) and the measured control value."""

    colours: tuple[int, ...]
    control: int

    def __getitem__(self, h: int) -> int:
        return self.colours[h]

    def __len__(self) -> int:
        return len(self.colours)

    def mask(self, colour: int) -> int:
        return to_mask(h for h, c in enumerate(self.colours) if c == colour)


def _colours_of(colouring) -> Sequence[int]:
    return colouring.colours if isinstance(colouring, Colouring) else colouring


def control_bound(X: CubeComplex) -> int:
    """The guaranteed control ``3**(f-1) * D`` for flatness ``f`` and dimension ``D``."""
    return 3 ** (flatness(X) - 1) * X.dimension


def colour(X: CubeComplex, ranks: dict[int, RankVector] | None = None,
           order: Sequence[int] | None = None) -> Colouring:
    """Colour ``h`` with 1 exactly when all its rank-maximal predecessors have colour 0.

    A hyperplane without predecessors gets 1. ``order`` may be any linear
    extension of the nesting order; the result does not depend on it.
    """
    if ranks is None:
        ranks = rank_vectors(X)
    if order is None:
        order = X.linear_extension
    colours: dict[int, int] = {}
    for h in order:
        preds = bits(X.predecessor_masks[h])
        if any(k not in colours for k in preds):
            raise ValueError(f"order places hyperplane {h} before one of its predecessors")
        if preds:
            top = max(ranks[k] for k in preds)
            maximal = [k for k in preds if ranks[k] == top]
            colours[h] = 1 if all(colours[k] == 0 for k in maximal) else 0
        else:
            colours[h] = 1
    flat = tuple(colours[h] for h in X.hyperplanes)
    return Colouring(flat, max_mono_inward(X, flat))


def longest_mono_from(X: CubeComplex, colouring, colour_value: int) -> list[int]:
    """Per vertex index, the longest inward path from it crossing only ``colour_value``."""
    chosen = to_mask(h for h, c in enumerate(_colours_of(colouring)) if c == colour_value)
    longest = [0] * X.vertex_count
    for i, m in enumerate(X.masks):  # inward neighbours have smaller indices
        best = 0
        for h in bits(X.inward_masks[i] & chosen):
            best = max(best, longest[X.index[m ^ (1 << h)]] + 1)
        longest[i] = best
    return longest


def max_mono_inward(X: CubeComplex, colouring) -> int:
    """Length of the longest monochromatic inward geodesic."""
    if X.vertex_count == 0:
        return 0
    return max(max(longest_mono_from(X, colouring, c)) for c in (0, 1))


def colouring_violations(X: CubeComplex, colouring, ranks: dict[int, RankVector]) -> list[tuple]:
    """Hyperplanes breaking either defining property of the colouring.

    Entries are ``(property, h, witness)``: property 1 fails when ``h`` shares
    its colour with every predecessor, property 2 when a predecessor with the
    same rank vector has the same colour.
    """
    cols = _colours_of(colouring)
    out = []
    for h in X.hyperplanes:
        preds = bits(X.predecessor_masks[h])
        if preds and all(cols[k] == cols[h] for k in preds):
            out.append((1, h, tuple(preds)))
        for k in preds:
            if ranks[k] == ranks[h] and cols[k] == cols[h]:
                out.append((2, h, k))
    return out


# -- chains -------------------------------------------------------------------

def _oriented_sides(X: CubeComplex, x_mask: int, hs: Iterable[int]) -> dict[int, int]:
    return {h: (X.all_vertices ^ X.positive[h]) if x_mask >> h & 1 else X.positive[h] for h in hs}


def reoriented_less(X: CubeComplex, x, hyperplanes: Iterable[int]):
    """Strict order ``h <_x k`` (h separates x from k) on the given hyperplanes."""
    sides = _oriented_sides(X, X.vertex_mask(x), hyperplanes)

    def lt(h: int, k: int) -> bool:
        sh, sk = sides[h], sides[k]
        return sh != sk and sk & sh == sk

    return lt


def _max_matching(nodes: list[int], succ: dict[int, list[int]]) -> dict[int, int]:
    """Maximum bipartite matching left -> right by augmenting paths."""
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set) -> bool:
        for v in succ[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in nodes:
        augment(u, set())
    return {u: v for v, u in match_right.items()}


def chain_partition(X: CubeComplex, x, y) -> list[list[int]]:
    """Minimum partition of the hyperplanes separating ``x, y`` into chains.

    Chains are ordered outward from ``x``. By Dilworth the count equals the
    largest pairwise crossing family, so it never exceeds ``X.dimension``.
    """
    xm, ym = X.vertex_mask(x), X.vertex_mask(y)
    separating = bits(xm ^ ym)
    lt = reoriented_less(X, xm, separating)
    succ = {u: [v for v in separating if v != u and lt(u, v)] for u in separating}
    nxt = _max_matching(separating, succ)
    has_prev = set(nxt.values())
    chains = []
    for start in separating:
        if start in has_prev:
            continue
        chain = [start]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    return chains


# -- boundness ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundnessReport:
    is_geodesic: bool
    is_inward: bool
    is_monochromatic: bool
    is_bound: bool
    is_totally_bound: bool
    crossed: tuple[int, ...]


def _restricted_predecessors(X: CubeComplex, h: int, within: int) -> int:
    below = X.below[h] & within
    covered = 0
    for j in bits(below):
        covered |= X.below[j] & within
    return below & ~covered


def _bound(X: CubeComplex, path_masks: list[int], crossed: list[int], within: int | None) -> bool:
    for h in crossed:
        if within is None:
            preds = X.predecessor_masks[h]
        elif within >> h & 1:
            preds = _restricted_predecessors(X, h, within)
        else:
            continue
        if preds.bit_count() < 2:
            continue
        if any(m & preds == 0 for m in path_masks):
            return False
    return True


def boundness_audit(X: CubeComplex, colouring, path: Sequence,
                    ranks: dict[int, RankVector] | None = None) -> BoundnessReport:
    """Classify a vertex path: geodesic, inward, monochromatic, bound, totally bound.

    A path is bound when no vertex on it sits in the inward corner of a
    crossed hyperplane with two or more predecessors; totally bound repeats the
    test inside every rank-vector prefix class.
    """
    masks = [X.vertex_mask(v) for v in path]
    crossed = []
    inward = True
    for a, b in zip(masks, masks[1:]):
        diff = a ^ b
        if diff.bit_count() != 1:
            raise NotAPath(f"{sorted(to_set(a))} and {sorted(to_set(b))} are not adjacent")
        h = diff.bit_length() - 1
        crossed.append(h)
        inward = inward and bool(a >> h & 1)
    geodesic = len(set(crossed)) == len(crossed)
    cols = _colours_of(colouring)
    mono = len({cols[h] for h in crossed}) <= 1
    bound = _bound(X, masks, crossed, None)
    total = bound
    if total and crossed:
        if ranks is None:
            ranks = rank_vectors(X)
        for members in rank_classes(X, ranks).values():
            if not _bound(X, masks, crossed, to_mask(members)):
                total = False
                break
    return BoundnessReport(geodesic, inward, mono, bound, total, tuple(crossed))


def maximal_chains(X: CubeComplex, hyperplanes: Iterable[int]) -> list[list[int]]:
    """All maximal <-chains inside a hyperplane set, each listed from the bottom."""
    members = to_mask(hyperplanes)
    covers = {}
    for h in bits(members):
        covers[h] = bits(_restricted_predecessors(X, h, members))
    ups: dict[int, list[int]] = {h: [] for h in covers}
    for h, below in covers.items():
        for k in below:
            ups[k].append(h)
    out = []

    def walk(chain):
        tops = ups[chain[-1]]
        if not tops:
            out.append(list(chain))
            return
        for h in tops:
            chain.append(h)
            walk(chain)
            chain.pop()

    for h, below in covers.items():
        if not below:
            walk([h])
    return out
