"""Invariant audits over one complex, grouped into suites.

Each check yields ``pass``, ``fail`` or ``info`` with a short detail and,
on failure, up to a few witnesses. Independent checks run on a thread pool
capped by ``CCDIM_THREADS``.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

from . import kernels
from .colouring import (
    boundness_audit,
    chain_partition,
    colour,
    colouring_violations,
    control_bound,
    maximal_chains,
    reoriented_less,
)
from .contraction import ContractionStep, cobornology_profile, descend_zero
from .core import CubeComplex, Relation, bits, to_set
from .errors import AmbiguousGate
from .geometry import (
    CubePoint,
    classify_point,
    embed,
    nested_pairs,
    opposite_pairs,
    p_less,
    p_op,
    project,
    project_actual,
    project_intervalic,
)
from .rank import d_ranks, flatness, rank_classes, rank_vectors

SUITES = ("core", "rank", "colouring", "geometry", "contraction")
MAX_WITNESSES = 5


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    status: str  # "pass", "fail" or "info"
    detail: str = ""
    witnesses: tuple = ()

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "status": self.status,
                "detail": self.detail, "witnesses": [repr(w) for w in self.witnesses]}


@dataclass
class AuditReport:
    suite: str
    samples: int
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "samples": self.samples, "seed": self.seed,
                "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"{c.status.upper():4}  {c.suite}.{c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
            for w in c.witnesses:
                lines.append(f"        witness {w!r}")
        fails = sum(c.status == "fail" for c in self.checks)
        lines.append(f"{len(self.checks)} checks, {fails} failed")
        return "\n".join(lines)


def _verdict(suite: str, name: str, failures: list, detail: str = "") -> Check:
    if failures:
        return Check(suite, name, "fail", f"{len(failures)} violations" + (f"; {detail}" if detail else ""),
                     tuple(failures[:MAX_WITNESSES]))
    return Check(suite, name, "pass", detail)


def random_rational(rng: random.Random, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def sample_points(X: CubeComplex, count: int, seed: int, density: float = 0.5,
                  max_den: int = 12) -> list[CubePoint]:
    """Seeded random rational points of the cube over the hyperplanes of ``X``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(CubePoint({h: random_rational(rng, max_den) for h in X.hyperplanes
                              if rng.random() < density}))
    return out


class _Context:
    """Shared, lazily computed data for one audit run."""

    def __init__(self, X: CubeComplex, samples: int, seed: int):
        self.X = X
        self.samples = samples
        self.seed = seed

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    @cached_property
    def ranks(self):
        return rank_vectors(self.X)

    @cached_property
    def flatness(self) -> int:
        return flatness(self.X)

    @cached_property
    def colouring(self):
        return colour(self.X, self.ranks)

    @cached_property
    def step(self) -> ContractionStep:
        return ContractionStep(self.X, self.colouring)

    @cached_property
    def points(self) -> list[CubePoint]:
        return sample_points(self.X, self.samples, self.seed)

    @cached_property
    def projected(self) -> list[CubePoint]:
        return [project(self.X, p) for p in self.points]

    def vertex_pairs(self, salt: str):
        """All index pairs, or ``samples`` random ones when that is fewer."""
        n = self.X.vertex_count
        total = n * (n - 1) // 2
        if total <= max(self.samples, 1):
            return list(itertools.combinations(range(n), 2))
        rng = self.rng(salt)
        out = []
        for _ in range(self.samples):
            i, j = rng.sample(range(n), 2)
            out.append((i, j))
        return out

    def warm(self, suites):
        if {"rank", "colouring", "contraction"} & set(suites):
            _ = self.X.dimension, self.ranks, self.flatness, self.colouring
        if "contraction" in suites:
            _ = self.step.quotient, self.X.distance_matrix
        if "geometry" in suites:
            nested_pairs(self.X), opposite_pairs(self.X)
        _ = self.X.predecessor_masks, self.X.inward_masks


# -- core -----------------------------------------------------------------------

def _core_relations(c: _Context) -> Check:
    X, bad = c.X, []
    for h, k in itertools.combinations(X.hyperplanes, 2):
        ph, pk = X.positive[h], X.positive[k]
        rel = X.relation(h, k)
        expected = {
            Relation.CROSSES: bool(ph & pk and ph & ~pk and pk & ~ph and X.all_vertices & ~(ph | pk)),
            Relation.LESS: ph & pk == pk and ph != pk,
            Relation.GREATER: ph & pk == ph and ph != pk,
            Relation.OPPOSITE: not ph & pk,
        }
        if sum(expected.values()) != 1 or not expected[rel]:
            bad.append((h, k, rel.value))
        if X.relation(k, h) is not {Relation.LESS: Relation.GREATER, Relation.GREATER: Relation.LESS}.get(rel, rel):
            bad.append(("asymmetric", h, k))
    return _verdict("core", "exactly_one_relation", bad)


def _core_median(c: _Context) -> Check:
    X, rng, bad = c.X, c.rng("median"), []
    vs = X.vertices
    for _ in range(c.samples):
        x, y, z = (rng.choice(vs) for _ in range(3))
        m = X.median(x, y, z)
        if m not in X:
            bad.append(("not a vertex", x, y, z))
        if any(X.median(*perm) != m for perm in itertools.permutations((x, y, z))):
            bad.append(("not symmetric", x, y, z))
        if x in X.interval(y, z) and m != x:
            bad.append(("interval", x, y, z))
        for a, b in ((x, y), (y, z), (z, x)):
            if m not in X.interval(a, b):
                bad.append(("outside interval", x, y, z))
                break
    return _verdict("core", "median_axioms", bad, f"{c.samples} triples")


def _graph_distances(X: CubeComplex, source: int) -> list[int]:
    dist = [-1] * X.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        i = queue.popleft()
        m = X.masks[i]
        for h in X.hyperplanes:
            j = X.index.get(m ^ (1 << h))
            if j is not None and dist[j] < 0:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def _core_distance(c: _Context) -> Check:
    X, bad = c.X, []
    rng = c.rng("distance")
    sources = range(X.vertex_count)
    if X.vertex_count > c.samples:
        sources = rng.sample(range(X.vertex_count), max(1, c.samples))
    D = X.distance_matrix
    for i in sources:
        graph = _graph_distances(X, i)
        for j, d in enumerate(graph):
            if d != int(D[i, j]) or d != X.distance(X.vertices[i], X.vertices[j]):
                bad.append((X.vertices[i], X.vertices[j], d, int(D[i, j])))
    return _verdict("core", "distance_is_separation_count", bad)


def _core_predecessor_duality(c: _Context) -> Check:
    X, bad = c.X, []
    for h in X.hyperplanes:
        try:
            _, y = X.gate_vertex(h)
        except AmbiguousGate as e:
            bad.append(("ambiguous gate", h, e.candidates))
            continue
        if X.predecessors(h) != X.adjacent_inward_set(y):
            bad.append((h, sorted(X.predecessors(h)), sorted(X.adjacent_inward_set(y))))
    return _verdict("core", "predecessor_duality", bad)


def _core_predecessors_cross(c: _Context) -> Check:
    X, bad = c.X, []
    for h in X.hyperplanes:
        preds = bits(X.predecessor_masks[h])
        for a, b in itertools.combinations(preds, 2):
            if not X.cross[a] >> b & 1:
                bad.append((h, a, b))
        if len(preds) > X.dimension:
            bad.append((h, "too many", len(preds)))
    return _verdict("core", "predecessors_cross", bad)


def _core_monotone_separation(c: _Context) -> Check:
    X, bad = c.X, []
    for h in X.hyperplanes:
        for k in bits(X.below[h]):
            if X.gates[k].bit_count() >= X.gates[h].bit_count():
                bad.append((k, h))
    return _verdict("core", "monotone_separation", bad)


# -- rank -----------------------------------------------------------------------

def _rank_d_monotone(c: _Context) -> Check:
    X, bad = c.X, []
    subsets = [("all", None)]
    for prefix, members in rank_classes(X, c.ranks).items():
        subsets.append((prefix, members))
    for d in range(2, X.dimension + 1):
        for label, subset in subsets:
            r = d_ranks(X, d, subset)
            for h in r:
                for k in bits(X.below[h]):
                    if k in r and r[k] > r[h]:
                        bad.append((d, label, k, h))
    return _verdict("rank", "d_rank_monotone", bad)


def _rank_vector_monotone(c: _Context) -> Check:
    X, bad = c.X, []
    for h in X.hyperplanes:
        for k in bits(X.below[h]):
            if c.ranks[k] > c.ranks[h]:
                bad.append((k, h, c.ranks[k], c.ranks[h]))
    return _verdict("rank", "rank_vector_monotone", bad)


def _rank_unique_max(c: _Context) -> Check:
    X, bad = c.X, []
    for h in X.hyperplanes:
        same = [k for k in bits(X.predecessor_masks[h]) if c.ranks[k] == c.ranks[h]]
        if len(same) > 1:
            bad.append((h, same))
    return _verdict("rank", "unique_equal_rank_predecessor", bad)


def _rank_predecessor_gap(c: _Context) -> Check:
    X, bad = c.X, []
    for d in range(max(2, c.flatness - 1), X.dimension + 1):
        r = d_ranks(X, d)
        for h in X.hyperplanes:
            for k in bits(X.predecessor_masks[h]):
                if r[k] < r[h] - 1:
                    bad.append((d, k, h, r[k], r[h]))
    return _verdict("rank", "predecessor_rank_gap", bad)


def _rank_flatness(c: _Context) -> Check:
    X, bad = c.X, []
    f, D = c.flatness, X.dimension
    if f > max(D, 1):
        bad.append(("flatness exceeds dimension", f, D))
    # vector entries are indexed D, D-1, ..., 2; entries for d > f must vanish
    for h, vec in c.ranks.items():
        for pos, d in enumerate(range(D, 1, -1)):
            if d > f and vec[pos] != 0:
                bad.append((h, d, vec))
    return _verdict("rank", "flatness_levels", bad, f"flatness {f}, dimension {D}")


def _rank_unique_predecessor(c: _Context) -> Check:
    X, bad = c.X, []
    per_d = {d: d_ranks(X, d) for d in range(2, X.dimension + 1)}
    for h in X.hyperplanes:
        preds = bits(X.predecessor_masks[h])
        if len(preds) != 1:
            continue
        k = preds[0]
        if c.ranks[k] != c.ranks[h] or any(r[k] != r[h] for r in per_d.values()):
            bad.append((k, h))
    return _verdict("rank", "unique_predecessor_same_rank", bad)


# -- colouring ------------------------------------------------------------------

def _colour_control(c: _Context) -> Check:
    bound = control_bound(c.X)
    l = c.colouring.control
    detail = f"control {l} <= {bound}" if l <= bound else f"control {l} > {bound}"
    return _verdict("colouring", "control_bound", [] if l <= bound else [(l, bound)], detail)


def _colour_properties(c: _Context) -> Check:
    return _verdict("colouring", "properties", colouring_violations(c.X, c.colouring, c.ranks))


def _colour_extension_independent(c: _Context) -> Check:
    X, rng, bad = c.X, c.rng("extension"), []
    for _ in range(min(c.samples, 20)):
        order = _random_linear_extension(X, rng)
        other = colour(X, c.ranks, order)
        if other.colours != c.colouring.colours:
            bad.append(tuple(order))
    return _verdict("colouring", "linear_extension_independent", bad)


def _random_linear_extension(X: CubeComplex, rng: random.Random) -> list[int]:
    remaining = set(X.hyperplanes)
    placed = 0
    order = []
    while remaining:
        ready = sorted(h for h in remaining if X.below[h] & ~placed == 0)
        h = rng.choice(ready)
        order.append(h)
        remaining.discard(h)
        placed |= 1 << h
    return order


def _mono_paths(c: _Context, rng: random.Random) -> list[list[frozenset]]:
    """Random maximal monochromatic inward paths, starting from random vertices."""
    X, cols = c.X, c.colouring.colours
    paths = []
    for _ in range(c.samples):
        i = rng.randrange(X.vertex_count)
        options = bits(X.inward_masks[i])
        if not options:
            continue
        target = cols[rng.choice(options)]
        m = X.masks[i]
        path = [m]
        while True:
            steps = [h for h in bits(X.inward_masks[X.index[m]]) if cols[h] == target]
            if not steps:
                break
            m ^= 1 << rng.choice(steps)
            path.append(m)
        paths.append([to_set(p) for p in path])
    return paths


def _colour_mono_totally_bound(c: _Context) -> Check:
    X, bad = c.X, []
    chains_bad = []
    cap = 3 ** (c.flatness - 1)
    paths = _mono_paths(c, c.rng("mono"))
    for path in paths:
        rep = boundness_audit(X, c.colouring, path, c.ranks)
        if not (rep.is_geodesic and rep.is_inward and rep.is_monochromatic and rep.is_totally_bound):
            bad.append(path)
            continue
        for chain in maximal_chains(X, rep.crossed):
            if len({c.ranks[h] for h in chain}) > cap:
                chains_bad.append(chain)
    detail = f"{len(paths)} paths"
    if chains_bad:
        bad.extend(("chain", ch) for ch in chains_bad)
    return _verdict("colouring", "monochromatic_paths_totally_bound", bad, detail)


def _colour_chain_partition(c: _Context) -> Check:
    X, bad = c.X, []
    for i, j in c.vertex_pairs("chains"):
        x, y = X.vertices[i], X.vertices[j]
        chains = chain_partition(X, x, y)
        flat = [h for ch in chains for h in ch]
        if len(chains) > X.dimension or sorted(flat) != sorted(x ^ y):
            bad.append((x, y, chains))
            continue
        lt = reoriented_less(X, x, flat)
        if any(not lt(a, b) for ch in chains for a, b in zip(ch, ch[1:])):
            bad.append((x, y, chains))
    return _verdict("colouring", "chain_partition", bad)


# -- geometry -------------------------------------------------------------------

def _geo_isometry(c: _Context) -> Check:
    X, bad = c.X, []
    emb = [embed(X, v) for v in X.vertices]
    D = X.distance_matrix
    for i, j in c.vertex_pairs("isometry"):
        if emb[i].l1(emb[j]) != int(D[i, j]):
            bad.append((X.vertices[i], X.vertices[j]))
    return _verdict("geometry", "vertex_isometry", bad)


def _geo_range_idempotent(c: _Context) -> Check:
    X, bad = c.X, []
    for p, q in zip(c.points, c.projected):
        if not classify_point(X, q).in_complex:
            bad.append(("outside", p, q))
        elif project(X, q) != q:
            bad.append(("moved", p, q))
    return _verdict("geometry", "range_and_idempotence", bad, f"{len(c.points)} points")


def _geo_contractive(c: _Context) -> Check:
    X, bad = c.X, []
    pts, proj = c.points, c.projected
    inter = [project_intervalic(X, p) for p in pts]
    for i in range(len(pts) - 1):
        d = pts[i].l1(pts[i + 1])
        if proj[i].l1(proj[i + 1]) > d:
            bad.append(("P", pts[i], pts[i + 1]))
        if inter[i].l1(inter[i + 1]) > d:
            bad.append(("P_I", pts[i], pts[i + 1]))
        if proj[i].l1(proj[i + 1]) > inter[i].l1(inter[i + 1]):
            bad.append(("P_A", inter[i], inter[i + 1]))
    return _verdict("geometry", "contractive", bad, f"{max(0, len(pts) - 1)} pairs")


def _geo_elementary(c: _Context) -> Check:
    rng, bad = c.rng("elementary"), []
    for _ in range(c.samples):
        a, b, a2, b2 = (random_rational(rng) for _ in range(4))
        before = abs(a - a2) + abs(b - b2)
        for f in (p_op, p_less):
            u, v = f(a, b)
            u2, v2 = f(a2, b2)
            if abs(u - u2) + abs(v - v2) > before:
                bad.append((f.__name__, (a, b), (a2, b2)))
    return _verdict("geometry", "elementary_maps_contractive", bad)


def _geo_vertices_fixed(c: _Context) -> Check:
    X, bad = c.X, []
    for v in X.vertices:
        e = embed(X, v)
        if project(X, e) != e:
            bad.append(v)
    return _verdict("geometry", "vertices_fixed", bad)


def _geo_norm(c: _Context) -> Check:
    X, bad = c.X, []
    for p in c.points:
        q = project_intervalic(X, p)
        if project_actual(X, q).norm() != q.norm():
            bad.append(q)
    return _verdict("geometry", "norm_preservation", bad, f"{len(c.points)} intervalic points")


def _shuffle_within_lengths(X: CubeComplex, rng: random.Random) -> list:
    lengths = X.pair_lengths
    groups: dict[int, list] = {}
    for pair in nested_pairs(X):
        groups.setdefault(lengths[pair], []).append(pair)
    order = []
    for length in sorted(groups, reverse=True):
        g = groups[length][:]
        rng.shuffle(g)
        order.extend(g)
    return order


def _geo_actual_order(c: _Context) -> Check:
    X, rng = c.X, c.rng("order")
    differ = []
    pts = c.points[: min(len(c.points), 200)]
    for p in pts:
        q = project_intervalic(X, p)
        base = project_actual(X, q)
        other = project_actual(X, q, _shuffle_within_lengths(X, rng))
        if other != base:
            differ.append((q, base, other))
    # not a guaranteed property: report, never fail
    detail = f"{len(differ)} of {len(pts)} points depend on the same-length order"
    return Check("geometry", "actual_order_independence", "info", detail, tuple(differ[:MAX_WITNESSES]))


def _geo_intervalic_any_order(c: _Context) -> Check:
    X, rng, bad = c.X, c.rng("op-order"), []
    pairs = opposite_pairs(X)
    for p in c.points[: min(len(c.points), 200)]:
        order = pairs[:]
        rng.shuffle(order)
        q = project_intervalic(X, p, order)
        if not classify_point(X, q).intervalic or project_intervalic(X, q, order) != q:
            bad.append((p, q))
    return _verdict("geometry", "intervalic_any_order", bad)


# -- contraction ----------------------------------------------------------------

def _con_columns(c: _Context) -> Check:
    step, bad = c.step, []
    for k, s in step.column_sums().items():
        if s > step.diagonal:
            bad.append((k, s))
    return _verdict("contraction", "weight_column_bound", bad, f"l = {step.l}")


def _con_lipschitz(c: _Context) -> Check:
    X, step, bad = c.X, c.step, []
    emb = [embed(X, v) for v in X.vertices]
    psis = [step.psi(e, check=False) for e in emb]
    phis = [step.phi(e, check=False) for e in emb]
    D = X.distance_matrix
    worst = Fraction(0)
    for i, j in c.vertex_pairs("lipschitz"):
        d = int(D[i, j])
        for label, imgs in (("psi", psis), ("phi", phis)):
            ratio = imgs[i].l1(imgs[j]) / d
            if label == "phi":
                worst = max(worst, ratio)
            if ratio > step.diagonal:
                bad.append((label, X.vertices[i], X.vertices[j], ratio))
    return _verdict("contraction", "lipschitz", bad, f"phi ratio {worst} <= {step.diagonal}" if not bad else "")


def _con_fixed_vertices(c: _Context) -> Check:
    X, step, bad = c.X, c.step, []
    zeros = c.colouring.mask(0)
    q = step.quotient
    for i, v in enumerate(X.vertices):
        if X.inward_masks[i] & zeros:
            continue
        expected = embed(q.quotient, q.image(v))
        if step.phi(embed(X, v), check=False) != expected:
            bad.append(v)
        if q.image(descend_zero(X, c.colouring, v)) != q.image(v):
            bad.append(("descend", v))
    return _verdict("contraction", "fixed_vertex_identity", bad)


def _con_cobornology(c: _Context) -> Check:
    audits = cobornology_profile(c.X, c.step.quotient, c.step.l)
    bad = [(a.R, a.max_source_distance, a.bound) for a in audits if not a.passed]
    return _verdict("contraction", "pi_cobornologous", bad, f"R = 0..{c.X.diameter}")


def _con_quotient(c: _Context) -> Check:
    X, step, bad = c.X, c.step, []
    q = step.quotient
    Q = q.quotient
    if Q.dimension > X.dimension:
        bad.append(("dimension", Q.dimension, X.dimension))
    if X.hyperplane_count and c.colouring.mask(1) and Q.hyperplane_count >= X.hyperplane_count:
        bad.append(("no shrink", Q.hyperplane_count))
    for a, b in itertools.combinations(q.keep, 2):
        if Q.relation(q.relabel[a], q.relabel[b]) is not X.relation(a, b):
            bad.append(("relation", a, b))
    for v, img in zip(X.vertices, q.vertex_map):
        if to_set(img) != q.image(v):
            bad.append(("pi", v))
    return _verdict("contraction", "quotient_structure", bad)


def _con_support(c: _Context) -> Check:
    X, step, bad = c.X, c.step, []
    zero = set(step.zero)
    pts = [embed(X, v) for v in X.vertices] + c.projected[: min(len(c.projected), 200)]
    for p in pts:
        if step.psi(p, check=False).support != p.support & zero:
            bad.append(p)
    return _verdict("contraction", "support_identity", bad)


CHECKS: dict[str, list[Callable[[_Context], Check]]] = {
    "core": [_core_relations, _core_median, _core_distance, _core_predecessor_duality,
             _core_predecessors_cross, _core_monotone_separation],
    "rank": [_rank_d_monotone, _rank_vector_monotone, _rank_unique_max, _rank_predecessor_gap,
             _rank_flatness, _rank_unique_predecessor],
    "colouring": [_colour_control, _colour_properties, _colour_extension_independent,
                  _colour_mono_totally_bound, _colour_chain_partition],
    "geometry": [_geo_isometry, _geo_range_idempotent, _geo_contractive, _geo_elementary,
                 _geo_vertices_fixed, _geo_norm, _geo_actual_order, _geo_intervalic_any_order],
    "contraction": [_con_columns, _con_lipschitz, _con_fixed_vertices, _con_cobornology,
                    _con_quotient, _con_support],
}


def _guarded(check: Callable[[_Context], Check], ctx: _Context, suite: str) -> Check:
    try:
        return check(ctx)
    except Exception as e:  # a crash is a failed invariant, not an audit error
        name = check.__name__.split("_", 2)[-1]
        return Check(suite, name, "fail", f"raised {type(e).__name__}: {e}")


def run_audit(X: CubeComplex, suite: str = "all", samples: int = 100, seed: int = 0) -> AuditReport:
    """Run every check of ``suite`` (or of all suites) on ``X``."""
    if suite != "all" and suite not in CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    if samples < 0:
        raise ValueError("samples must be non-negative")
    suites = SUITES if suite == "all" else (suite,)
    ctx = _Context(X, samples, seed)
    ctx.warm(suites)
    if "geometry" in suites or "contraction" in suites:
        _ = ctx.projected
    jobs = [(s, check) for s in suites for check in CHECKS[s]]
    workers = min(kernels.thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(lambda job: _guarded(job[1], ctx, job[0]), jobs))
    else:
        checks = [_guarded(check, ctx, s) for s, check in jobs]
    return AuditReport(suite, samples, seed, checks)
