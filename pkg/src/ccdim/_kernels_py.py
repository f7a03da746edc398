"""Pure-Python kernels over vertex bitmasks.

A vertex is an ``int`` whose bit ``h`` is set when hyperplane ``h`` separates
it from the basepoint. These functions mirror ``_kernels.pyx`` exactly and
are used whenever the compiled module is missing or a complex has more than
64 hyperplanes.
"""
import numpy as np

MAX_BITS = None  # no width limit


def majority(a, b, c):
    return (a & b) | (b & c) | (a & c)


def majority_witness(masks):
    """Index triple ``(i, j, k)`` whose majority is not in ``masks``, or None."""
    present = set(masks)
    n = len(masks)
    for i in range(n):
        a = masks[i]
        for j in range(i + 1, n):
            b = masks[j]
            ab = a & b
            aob = a | b
            for k in range(j + 1, n):
                c = masks[k]
                if (ab | (aob & c)) not in present:
                    return i, j, k
    return None


def majority_closure(masks):
    """Smallest superset of ``masks`` closed under majority, sorted."""
    members = list(dict.fromkeys(masks))
    present = set(members)
    # every triple containing a fresh element gets examined once
    start = 0
    while start < len(members):
        stop = len(members)
        for k in range(start, stop):
            c = members[k]
            for i in range(stop):
                a = members[i]
                for j in range(i + 1, stop):
                    m = majority(a, members[j], c)
                    if m not in present:
                        present.add(m)
                        members.append(m)
        start = stop
    return sorted(members)


def pairwise_hamming(masks, num_threads=0):
    n = len(masks)
    out = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        a = masks[i]
        for j in range(i + 1, n):
            d = (a ^ masks[j]).bit_count()
            out[i, j] = d
            out[j, i] = d
    return out


def _expand(adj, cand, size, best, target):
    while cand:
        if size + cand.bit_count() <= best:
            return best
        v = cand.bit_length() - 1
        cand &= ~(1 << v)
        nxt = cand & adj[v]
        if nxt:
            best = _expand(adj, nxt, size + 1, best, target)
        elif size + 1 > best:
            best = size + 1
        if best >= target:
            return best
    return best


def max_clique(adj, candidates):
    """Size of a largest clique among the bits of ``candidates``.

    ``adj[v]`` is the neighbourhood bitmask of ``v``.
    """
    if not candidates:
        return 0
    return _expand(adj, candidates, 0, 0, candidates.bit_count() + 1)


def has_clique(adj, candidates, k):
    if k <= 0:
        return True
    if candidates.bit_count() < k:
        return False
    return _expand(adj, candidates, 0, 0, k) >= k
