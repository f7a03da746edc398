"""End-to-end acceptance checks over the standard instance suite.

Each ``criterion_*`` function returns ``(passed, detail)``. Under pytest every
criterion is one test and a PASS/FAIL line per criterion is printed in the
terminal summary; ``python tests/test_acceptance.py`` prints the same lines.
"""
import itertools
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ccdim import (  # noqa: E402
    colour,
    contract_pipeline,
    embed,
    flatness,
    project,
    rank_vectors,
)
from ccdim.audit import sample_points  # noqa: E402
from ccdim.colouring import chain_partition, colouring_violations, control_bound, reoriented_less  # noqa: E402
from ccdim.contraction import ContractionStep, cobornology_profile  # noqa: E402
from ccdim.generators import ELL_GRID_LABELS, ell_grid, grid, standard_suite  # noqa: E402
from ccdim.geometry import project_actual, project_intervalic  # noqa: E402
from ccdim.rank import d_ranks  # noqa: E402

SUITE = standard_suite()
RESULTS: dict[int, tuple[bool, str, str]] = {}


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _slowest(times):
    name = max(times, key=times.get)
    return f"slowest {name} {times[name]:.2f}s"


def criterion_1():
    """Measured control never exceeds 3^(f-1) * D; each instance under 5 s."""
    bad, times = [], {}
    for name, X in SUITE.items():
        (c, bound), times[name] = _timed(lambda: (colour(X), control_bound(X)))
        if c.control > bound or times[name] >= 5:
            bad.append(f"{name}: control {c.control} bound {bound} {times[name]:.2f}s")
    return not bad, "; ".join(bad) or f"{len(SUITE)} complexes, {_slowest(times)}"


def criterion_2():
    """ell_grid dimension, flatness, rank vectors, colours and control, also by brute force."""
    X = ell_grid()
    n, vs = oracles.ell_grid_vertices()
    lab = dict(enumerate(ELL_GRID_LABELS))
    want_ranks = {h: ((1,) if lab[h] in ("a3", "b3") else (0,)) for h in range(6)}
    want_colours = tuple(0 if lab[h] in ("a2", "b2") else 1 for h in range(6))
    ranks = rank_vectors(X)
    c = colour(X, ranks)
    brute_ranks = oracles.brute_rank_vectors(n, vs)
    brute_cols = oracles.brute_colouring(n, vs, brute_ranks)
    got = (X.dimension, flatness(X), ranks, c.colours, c.control)
    brute = (oracles.brute_dimension(n, vs), oracles.brute_flatness(n, vs), brute_ranks,
             tuple(brute_cols[h] for h in range(n)), oracles.brute_control(vs, brute_cols))
    want = (2, 2, want_ranks, want_colours, 2)
    return got == want == brute, f"dimension {got[0]}, flatness {got[1]}, colours {got[3]}, control {got[4]}"


def _phi_step(X):
    step = ContractionStep(X, colour(X))
    return step, [step.phi(embed(X, v), check=False) for v in X.vertices]


def criterion_3():
    """phi is l/(l+1)-Lipschitz on vertex pairs; grid(3,3) attains 2/3."""
    bad, grid_max = [], None
    for name, X in SUITE.items():
        step, images = _phi_step(X)
        D = X.distance_matrix
        worst = Fraction(0)
        for i, j in itertools.combinations(range(X.vertex_count), 2):
            worst = max(worst, images[i].l1(images[j]) / int(D[i, j]))
        if worst > step.diagonal:
            bad.append(f"{name}: {worst} > {step.diagonal}")
        if name == "grid(3,3)":
            grid_max = worst
    if grid_max != Fraction(2, 3):
        bad.append(f"grid(3,3) maximum {grid_max}")
    return not bad, "; ".join(bad) or "grid(3,3) maximum ratio 2/3"


def criterion_4():
    """Projection: idempotent, contractive, fixes vertices, preserves norm of intervalic points."""
    bad, times = [], {}
    for name, X in SUITE.items():
        def run():
            problems = []
            pts = sample_points(X, 1000, seed=2024)
            proj = [project(X, p) for p in pts]
            if any(project(X, q) != q for q in proj):
                problems.append("not idempotent")
            if any(proj[i].l1(proj[i + 1]) > pts[i].l1(pts[i + 1]) for i in range(len(pts) - 1)):
                problems.append("not contractive")
            if any(project(X, embed(X, v)) != embed(X, v) for v in X.vertices):
                problems.append("moves a vertex")
            for p in pts:
                q = project_intervalic(X, p)
                if project_actual(X, q).norm() != q.norm():
                    problems.append("norm changed")
                    break
            return problems
        problems, times[name] = _timed(run)
        if problems or times[name] >= 10:
            bad.append(f"{name}: {', '.join(problems) or 'slow'} {times[name]:.2f}s")
    return not bad, "; ".join(bad) or f"1000 points per complex, {_slowest(times)}"


def criterion_5():
    """Predecessors equal the inward edges at the gate of each hyperplane."""
    bad = []
    for name, X in SUITE.items():
        for h in X.hyperplanes:
            if X.predecessors(h) != X.adjacent_inward_set(X.gate_vertex(h)[1]):
                bad.append(f"{name}: {h}")
    return not bad, "; ".join(bad) or "every hyperplane of every complex"


def criterion_6():
    """d-ranks and rank vectors are monotone; at most one equal-rank predecessor."""
    count = 0
    bad = []
    for name, X in SUITE.items():
        ranks = rank_vectors(X)
        per_d = {d: d_ranks(X, d) for d in range(2, X.dimension + 1)}
        for h in X.hyperplanes:
            for k in X.hyperplanes:
                if k == h or not X.less(k, h):
                    continue
                count += 1
                if ranks[k] > ranks[h] or any(r[k] > r[h] for r in per_d.values()):
                    bad.append(f"{name}: {k}<{h}")
            same = [k for k in X.predecessors(h) if ranks[k] == ranks[h]]
            if len(same) > 1:
                bad.append(f"{name}: {h} has {same}")
    return not bad, "; ".join(bad) or f"{count} nested pairs, 0 violations"


def criterion_7():
    """Colouring properties hold hyperplane by hyperplane."""
    bad = []
    for name, X in SUITE.items():
        ranks = rank_vectors(X)
        found = colouring_violations(X, colour(X, ranks), ranks)
        if found:
            bad.append(f"{name}: {found[:3]}")
    return not bad, "; ".join(bad) or "0 violations"


def criterion_8():
    """Vertices with images within R are within (l+1)(R+2), for R up to the diameter."""
    bad = []
    for name, X in SUITE.items():
        step = ContractionStep(X, colour(X))
        for a in cobornology_profile(X, step.quotient, step.l):
            if not a.passed:
                bad.append(f"{name}: R={a.R} {a.max_source_distance} > {a.bound}")
    return not bad, "; ".join(bad) or "all radii"


def _round_bound(l1, epsilon):
    """Smallest n with (l1/(l1+1))^n <= epsilon, plus 3."""
    factor, n, acc = Fraction(l1, l1 + 1), 0, Fraction(1)
    while acc > epsilon:
        acc *= factor
        n += 1
    return n + 3


def criterion_9():
    """Pipeline reaches epsilon within the round bound, keeps dimension, and is Lipschitz."""
    bad, times = [], {}
    g = contract_pipeline(grid(3, 3), Fraction(1, 2))
    if not (len(g.rounds) == 2 and g.rounds[0].factor == Fraction(2, 3) and g.collapsed):
        bad.append(f"grid(3,3) at 1/2: {len(g.rounds)} rounds, status {g.status}")
    eps = Fraction(1, 4)
    for name, X in SUITE.items():
        r, times[name] = _timed(lambda: contract_pipeline(X, eps))
        limit = _round_bound(r.rounds[0].control, eps)
        reached = r.status == "reached" and len(r.rounds) <= limit
        if not (reached or r.collapsed) or not r.dimension_ok or not r.lipschitz_ok or times[name] >= 30:
            bad.append(f"{name}: {r.status} after {len(r.rounds)} (limit {limit}), "
                       f"measured {r.composite_measured} vs {r.composite_factor}")
    return not bad, "; ".join(bad) or f"grid(3,3) 2 rounds then a point; {_slowest(times)}"


def criterion_10():
    """Embedding is an isometry on vertices."""
    bad = []
    for name, X in SUITE.items():
        emb = [embed(X, v) for v in X.vertices]
        for i, j in itertools.combinations(range(X.vertex_count), 2):
            if emb[i].l1(emb[j]) != X.distance(X.vertices[i], X.vertices[j]):
                bad.append(f"{name}: {sorted(X.vertices[i])} {sorted(X.vertices[j])}")
    return not bad, "; ".join(bad[:5]) or "all vertex pairs"


def criterion_11():
    """phi fixes vertices with no 0-coloured inward edge, up to the quotient map."""
    bad, checked = [], 0
    for name, X in SUITE.items():
        c = colour(X)
        step = ContractionStep(X, c)
        q = step.quotient
        zeros = c.mask(0)
        for i, v in enumerate(X.vertices):
            if X.inward_masks[i] & zeros:
                continue
            checked += 1
            if step.phi(embed(X, v)) != embed(q.quotient, q.image(v)):
                bad.append(f"{name}: {sorted(v)}")
    return not bad, "; ".join(bad[:5]) or f"{checked} vertices"


def criterion_12():
    """Chain partitions cover the separating set with at most D totally ordered chains."""
    bad, pairs = [], 0
    for name, X in SUITE.items():
        for x, y in itertools.combinations(X.vertices, 2):
            pairs += 1
            chains = chain_partition(X, x, y)
            flat = [h for ch in chains for h in ch]
            lt = reoriented_less(X, x, flat)
            ordered = all(lt(a, b) for ch in chains for a, b in itertools.combinations(ch, 2))
            if len(chains) > X.dimension or sorted(flat) != sorted(x ^ y) or not ordered:
                bad.append(f"{name}: {sorted(x)} {sorted(y)}")
    return not bad, "; ".join(bad[:5]) or f"{pairs} vertex pairs"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def _run(number: int):
    fn = CRITERIA[number - 1]
    ok, detail = fn()
    RESULTS[number] = (ok, fn.__doc__.strip(), detail)
    return ok, detail


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    ok, detail = _run(number)
    assert ok, detail


def result_line(number: int) -> str:
    ok, doc, detail = RESULTS[number]
    return f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {doc} [{detail}]"


if __name__ == "__main__":
    failed = 0
    for n in range(1, len(CRITERIA) + 1):
        ok, _ = _run(n)
        failed += not ok
        print(result_line(n), flush=True)
    sys.exit(1 if failed else 0)
