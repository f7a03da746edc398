"""Quotients by 0-coloured hyperplanes and the Lipschitz contraction pipeline.

One round takes a complex ``X`` with its colouring and measured control ``l``
and maps it to the quotient over the 0-coloured hyperplanes by
``phi = project(quotient, psi(.))``, an ``l/(l+1)``-Lipschitz map.
Iterating rounds multiplies the factors.
"""
from __future__ import annotations

import random
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .colouring import Colouring, colour, control_bound
from .core import CubeComplex, bits, to_mask, to_set
from .errors import PointNotInComplex
from .geometry import ONE, ZERO, CubePoint, classify_point, embed, project
from .rank import flatness, rank_vectors


@dataclass(frozen=True, eq=False)
class QuotientResult:
    """The complex over ``keep`` plus the canonical vertex map onto it.

    Kept hyperplanes are renumbered ``0..len(keep)-1`` in increasing order;
    ``relabel`` maps old ids to new ones.
    """

    quotient: CubeComplex
    keep: tuple[int, ...]
    relabel: dict[int, int]
    vertex_map: tuple[int, ...]  # X vertex index -> quotient vertex mask
    source_masks: tuple[int, ...] = field(repr=False)

    @property
    def pi(self) -> dict[frozenset, frozenset]:
        return {to_set(m): to_set(q) for m, q in zip(self.source_masks, self.vertex_map)}

    def image(self, x) -> frozenset:
        m = x if isinstance(x, int) else to_mask(x)
        return to_set(_compress(m, self.keep))


def _compress(mask: int, keep: Sequence[int]) -> int:
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


def quotient(X: CubeComplex, keep: Iterable[int]) -> QuotientResult:
    """Forget every hyperplane outside ``keep``."""
    keep = tuple(sorted(set(keep)))
    for h in keep:
        if not 0 <= h < X.hyperplane_count:
            raise ValueError(f"hyperplane {h} is not in the complex")
    images = tuple(_compress(m, keep) for m in X.masks)
    Q = CubeComplex.from_masks(len(keep), dict.fromkeys(images))
    return QuotientResult(Q, keep, {h: i for i, h in enumerate(keep)}, images, X.masks)


class ContractionStep:
    """Weights, psi and phi for one complex, colouring and control value."""

    def __init__(self, X: CubeComplex, colouring: Colouring, l: int | None = None):
        self.X = X
        self.colouring = colouring
        self.l = colouring.control if l is None else l
        if self.l < 1:
            raise ValueError("control value must be at least 1")
        self.diagonal = Fraction(self.l, self.l + 1)
        self.step = Fraction(1, self.l + 1)
        self.zero = tuple(h for h in X.hyperplanes if colouring[h] == 0)
        ones = colouring.mask(1)
        # off-diagonal weights: 1-coloured k above h with no 1-coloured hyperplane in between
        self.upper: dict[int, tuple[int, ...]] = {}
        for h in self.zero:
            targets = []
            for k in bits(X.above[h] & ones):
                if not X.above[h] & X.below[k] & ones:
                    targets.append(k)
            self.upper[h] = tuple(targets)
        self._quotient = None

    @property
    def quotient(self) -> QuotientResult:
        if self._quotient is None:
            self._quotient = quotient(self.X, self.zero)
        return self._quotient

    def weight(self, h: int, k: int) -> Fraction:
        if self.colouring[h] != 0:
            raise ValueError(f"hyperplane {h} is not 0-coloured")
        if h == k:
            return self.diagonal
        return self.step if k in self.upper[h] else ZERO

    def column_sums(self) -> dict[int, Fraction]:
        sums = {k: ZERO for k in self.X.hyperplanes}
        for h in self.zero:
            sums[h] += self.diagonal
            for k in self.upper[h]:
                sums[k] += self.step
        return sums

    def psi(self, p: CubePoint, check: bool = True) -> CubePoint:
        """Weighted average onto the 0-coloured coordinates, truncated at 1 (old labels)."""
        if check and not classify_point(self.X, p).in_complex:
            raise PointNotInComplex(f"{p!r} is not a point of the complex")
        out = {}
        for h in self.zero:
            total = self.diagonal * p[h]
            for k in self.upper[h]:
                total += self.step * p[k]
            if total:
                out[h] = min(ONE, total)
        return CubePoint._raw(out)

    def phi(self, p: CubePoint, check: bool = True) -> CubePoint:
        """Image of ``p`` in the quotient complex (quotient labels)."""
        q = self.quotient
        return project(q.quotient, self.psi(p, check).relabel(q.relabel))


_steps: "weakref.WeakKeyDictionary[CubeComplex, dict]" = weakref.WeakKeyDictionary()


def _step_for(X: CubeComplex, colouring: Colouring, l: int) -> ContractionStep:
    cache = _steps.setdefault(X, {})
    key = (colouring.colours, l)
    if key not in cache:
        cache[key] = ContractionStep(X, colouring, l)
    return cache[key]


def weight(X: CubeComplex, colouring: Colouring, l: int, h: int, k: int) -> Fraction:
    return _step_for(X, colouring, l).weight(h, k)


def psi(X: CubeComplex, colouring: Colouring, l: int, p: CubePoint) -> CubePoint:
    return _step_for(X, colouring, l).psi(p)


def phi(X: CubeComplex, colouring: Colouring, l: int, p: CubePoint) -> CubePoint:
    return _step_for(X, colouring, l).phi(p)


def descend_zero(X: CubeComplex, colouring: Colouring, x) -> frozenset:
    """Follow 0-coloured inward edges (least hyperplane first) until none is left."""
    m = X.vertex_mask(x)
    zeros = colouring.mask(0)
    while True:
        options = X.inward_masks[X.index[m]] & zeros
        if not options:
            return to_set(m)
        low = options & -options
        m ^= low


def _pairwise_l1(points: Sequence[CubePoint]) -> list[list[Fraction]]:
    n = len(points)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out[i][j] = out[j][i] = points[i].l1(points[j])
    return out


def lipschitz_ratio(images: Sequence[CubePoint], sources: Sequence, X: CubeComplex) -> Fraction:
    """Largest ``|image_i - image_j|_1 / d(source_i, source_j)`` over distinct sources."""
    if len(images) != len(sources):
        raise ValueError("images and sources must be parallel")
    masks = [X.vertex_mask(s) for s in sources]
    best = ZERO
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            d = (masks[i] ^ masks[j]).bit_count()
            if d:
                best = max(best, images[i].l1(images[j]) / d)
    return best


@dataclass(frozen=True)
class CobornologyAudit:
    R: int
    max_source_distance: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.max_source_distance <= self.bound


def _pi_masks(X: CubeComplex, pi) -> list[int]:
    if isinstance(pi, QuotientResult):
        return list(pi.vertex_map)
    return [to_mask(pi[v]) for v in X.vertices]


def cobornology_audit(X: CubeComplex, pi, l: int, R: int) -> CobornologyAudit:
    """Largest source distance among vertex pairs whose images are within ``R``."""
    return cobornology_profile(X, pi, l, [R])[0]


def cobornology_profile(X: CubeComplex, pi, l: int, radii: Iterable[int] | None = None) -> list[CobornologyAudit]:
    images = _pi_masks(X, pi)
    width = max((m.bit_length() for m in images), default=0)
    image_d = kernels.pairwise_hamming(images, width)
    source_d = X.distance_matrix
    if radii is None:
        radii = range(X.diameter + 1)
    out = []
    for R in radii:
        close = image_d <= R
        worst = int(source_d[close].max()) if close.any() else 0
        out.append(CobornologyAudit(R, worst, (l + 1) * (R + 2)))
    return out


# -- pipeline -------------------------------------------------------------------

@dataclass
class RoundRecord:
    hyperplane_count: int
    dimension: int
    flatness: int
    control: int
    control_bound: int
    factor: Fraction
    measured_max_ratio: Fraction
    quotient_hyperplane_count: int
    quotient_dimension: int
    complex: CubeComplex = field(repr=False)
    colouring: Colouring = field(repr=False)

    def to_json(self) -> dict:
        return {
            "hyperplane_count": self.hyperplane_count,
            "dimension": self.dimension,
            "flatness": self.flatness,
            "control": self.control,
            "control_bound": self.control_bound,
            "factor": str(self.factor),
            "measured_max_ratio": str(self.measured_max_ratio),
            "quotient_hyperplane_count": self.quotient_hyperplane_count,
            "quotient_dimension": self.quotient_dimension,
            "colours": list(self.colouring.colours),
        }


@dataclass
class ContractionReport:
    epsilon: Fraction
    source_dimension: int
    rounds: list[RoundRecord]
    composite_factor: Fraction
    composite_measured: Fraction
    tracked: list[frozenset]
    images: list[CubePoint]
    final: CubeComplex
    status: str  # "reached", "collapsed" or "rounds_exhausted"

    @property
    def collapsed(self) -> bool:
        return self.final.hyperplane_count == 0

    @property
    def dimension_ok(self) -> bool:
        return all(r.quotient_dimension <= self.source_dimension for r in self.rounds)

    @property
    def lipschitz_ok(self) -> bool:
        return self.composite_measured <= self.composite_factor

    @property
    def passed(self) -> bool:
        return self.status != "rounds_exhausted" and self.dimension_ok and self.lipschitz_ok

    def to_json(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "source_dimension": self.source_dimension,
            "status": self.status,
            "passed": self.passed,
            "collapsed": self.collapsed,
            "composite_factor": str(self.composite_factor),
            "composite_measured": str(self.composite_measured),
            "rounds": [r.to_json() for r in self.rounds],
            "tracked": [sorted(v) for v in self.tracked],
            "images": [{str(h): str(v) for h, v in p.items()} for p in self.images],
        }

    def to_text(self) -> str:
        lines = [f"epsilon {self.epsilon}  source dimension {self.source_dimension}"]
        lines.append("round  H  dim  flat  l  bound  factor  measured  quotient_H  quotient_dim")
        for t, r in enumerate(self.rounds, 1):
            lines.append(
                f"{t:>5}  {r.hyperplane_count}  {r.dimension}  {r.flatness}  {r.control}  "
                f"{r.control_bound}  {r.factor}  {r.measured_max_ratio}  "
                f"{r.quotient_hyperplane_count}  {r.quotient_dimension}"
            )
        lines.append(f"composite factor {self.composite_factor}")
        lines.append(f"composite measured {self.composite_measured}")
        lines.append(f"status {self.status}")
        lines.append(("PASS" if self.passed else "FAIL") + " contraction pipeline")
        return "\n".join(lines)


def _round_ratio(before: Sequence[CubePoint], after: Sequence[CubePoint]) -> Fraction:
    best = ZERO
    for i in range(len(before)):
        for j in range(i + 1, len(before)):
            d = before[i].l1(before[j])
            if d:
                best = max(best, after[i].l1(after[j]) / d)
    return best


def select_tracked(X: CubeComplex, track: str | None = None, seed: int = 0,
                   sample_cap: int = 400) -> list[frozenset]:
    """Vertices followed through the pipeline: ``"all"``, ``"sample:K"`` or None (all up to the cap)."""
    verts = list(X.vertices)
    if track is None:
        track = "all" if len(verts) <= sample_cap else f"sample:{sample_cap}"
    if track == "all":
        return verts
    if track.startswith("sample:"):
        k = int(track.split(":", 1)[1])
        if k >= len(verts):
            return verts
        return random.Random(seed).sample(verts, k)
    raise ValueError(f"unknown tracking mode {track!r}")


def contract_pipeline(X: CubeComplex, epsilon, max_rounds: int = 64, track: str | None = None,
                      seed: int = 0, sample_cap: int = 400) -> ContractionReport:
    """Iterate colour / quotient / phi rounds until the composite factor drops to ``epsilon``.

    Stops early when the current complex has no hyperplanes left (every point
    then has the same image). ``status`` records which condition ended the run.
    """
    epsilon = Fraction(epsilon)
    if not ZERO < epsilon < ONE:
        raise ValueError("epsilon must lie in (0, 1)")
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    tracked = select_tracked(X, track, seed, sample_cap)
    points = [embed(X, v) for v in tracked]
    current = X
    composite = ONE
    rounds: list[RoundRecord] = []
    for _ in range(max_rounds):
        if current.hyperplane_count == 0 or composite <= epsilon:
            break
        ranks = rank_vectors(current)
        col = colour(current, ranks)
        step = ContractionStep(current, col)
        images = [step.phi(p, check=False) for p in points]
        factor = Fraction(step.l, step.l + 1)
        q = step.quotient.quotient
        rounds.append(RoundRecord(
            current.hyperplane_count, current.dimension, flatness(current), step.l,
            control_bound(current), factor, _round_ratio(points, images),
            q.hyperplane_count, q.dimension, current, col,
        ))
        composite *= factor
        points, current = images, q
    if composite <= epsilon:
        status = "reached"
    elif current.hyperplane_count == 0:
        status = "collapsed"
    else:
        status = "rounds_exhausted"
    measured = lipschitz_ratio(points, tracked, X)
    return ContractionReport(epsilon, X.dimension, rounds, composite, measured,
                             tracked, points, current, status)
