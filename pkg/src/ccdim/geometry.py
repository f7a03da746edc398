"""Exact l1 geometry of the cube over the hyperplanes and its retraction onto the complex.

All coordinates are :class:`fractions.Fraction`; nothing here touches floats.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .core import CubeComplex, bits
from .errors import NonTermination, NotIntervalic, SupportGrew

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


class CubePoint:
    """Finitely supported point of ``[0,1]^H`` with canonical (zero-free) support."""

    __slots__ = ("_coords", "_key")

    def __init__(self, coords: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coords.items() if isinstance(coords, Mapping) else coords
        clean = {}
        for h, v in items:
            v = as_fraction(v)
            if not ZERO <= v <= ONE:
                raise ValueError(f"coordinate {h} = {v} is outside [0, 1]")
            if v:
                clean[int(h)] = v
        self._coords = clean
        self._key = None

    @classmethod
    def _raw(cls, clean: dict) -> "CubePoint":
        p = cls.__new__(cls)
        p._coords = clean
        p._key = None
        return p

    def __getitem__(self, h: int) -> Fraction:
        return self._coords.get(h, ZERO)

    def items(self):
        return sorted(self._coords.items())

    @property
    def support(self) -> frozenset:
        return frozenset(self._coords)

    def support_mask(self) -> int:
        m = 0
        for h in self._coords:
            m |= 1 << h
        return m

    def norm(self) -> Fraction:
        return sum(self._coords.values(), ZERO)

    def l1(self, other: "CubePoint") -> Fraction:
        a, b = self._coords, other._coords
        total = ZERO
        for h, v in a.items():
            total += abs(v - b.get(h, ZERO))
        for h, v in b.items():
            if h not in a:
                total += v
        return total

    def with_pair(self, h: int, k: int, a: Fraction, b: Fraction) -> "CubePoint":
        clean = dict(self._coords)
        for key, v in ((h, a), (k, b)):
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        return CubePoint._raw(clean)

    def relabel(self, mapping: Mapping[int, int]) -> "CubePoint":
        """Keep the coordinates named in ``mapping``, renamed."""
        return CubePoint._raw({mapping[h]: v for h, v in self._coords.items() if h in mapping})

    def _sorted_key(self):
        if self._key is None:
            self._key = tuple(sorted(self._coords.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, CubePoint):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self):
        return hash(self._sorted_key())

    def __repr__(self):
        inner = ", ".join(f"{h}: {v}" for h, v in self._sorted_key())
        return f"CubePoint({{{inner}}})"


def embed(X: CubeComplex, x) -> CubePoint:
    """Characteristic function of the hyperplanes separating ``x`` from the basepoint."""
    return CubePoint._raw({h: ONE for h in bits(X.vertex_mask(x))})


@dataclass(frozen=True)
class PointClass:
    intervalic: bool
    actual: bool
    witnesses: tuple = field(default=())

    @property
    def in_complex(self) -> bool:
        return self.intervalic and self.actual


def _check_support(X: CubeComplex, p: CubePoint):
    if p.support_mask() >> X.hyperplane_count:
        raise ValueError("point has coordinates outside the hyperplanes of the complex")


def classify_point(X: CubeComplex, p: CubePoint) -> PointClass:
    """Intervalic (no opposite pair both positive) and actual (no virtual nested pair).

    Witnesses are ``("opposite", h, k)`` and ``("virtual", h, k)`` with ``h < k``
    in the second case.
    """
    _check_support(X, p)
    supp = p.support_mask()
    opposite = [("opposite", h, k) for h in bits(supp) for k in bits(X.opposite[h] & supp) if h < k]
    virtual = [("virtual", h, k) for k in bits(supp) for h in bits(X.below[k]) if p[h] < ONE]
    return PointClass(not opposite, not virtual, tuple(opposite + virtual))


def p_op(a, b) -> tuple[Fraction, Fraction]:
    """Cancel the common part of two coordinates on opposite hyperplanes."""
    a, b = as_fraction(a), as_fraction(b)
    if a >= b:
        return a - b, ZERO
    return ZERO, b - a


def p_less(a, b) -> tuple[Fraction, Fraction]:
    """Push mass from the outer coordinate onto the inner one of a nested pair, keeping the sum."""
    a, b = as_fraction(a), as_fraction(b)
    s = a + b
    if s <= ONE:
        return s, ZERO
    return ONE, s - ONE


def ordered_compose(transforms: Mapping[Hashable, Callable], order: Sequence[Hashable], point,
                    supported: Callable[[Hashable, object], bool] | None = None):
    """Apply the family ``transforms`` to ``point`` as one composition along ``order``.

    The family's support at a point is the set of indices whose map moves it.
    The least supported index is applied repeatedly until the support is empty;
    each application must remove its own index and add nothing. ``supported``
    may supply a cheaper support test than re-evaluating each map.
    """
    if supported is None:
        def supported(lam, s):
            return transforms[lam](s) != s

    support = [lam for lam in order if supported(lam, point)]
    while support:
        lam = support[0]
        point = transforms[lam](point)
        fresh = [mu for mu in order if supported(mu, point)]
        if lam in fresh:
            raise NonTermination(f"applying {lam!r} left it in the support")
        allowed = set(support[1:])
        if any(mu not in allowed for mu in fresh):
            raise SupportGrew(f"applying {lam!r} grew the support to {fresh!r}")
        support = fresh
    return point


_families: "weakref.WeakKeyDictionary[CubeComplex, dict]" = weakref.WeakKeyDictionary()


def _family_cache(X: CubeComplex) -> dict:
    cache = _families.get(X)
    if cache is None:
        cache = _families[X] = {}
    return cache


def opposite_pairs(X: CubeComplex) -> list[tuple[int, int]]:
    """Opposite pairs ``(h, k)``, ``h < k`` as integers, in lexicographic order."""
    cache = _family_cache(X)
    if "op" not in cache:
        cache["op"] = [(h, k) for h in X.hyperplanes for k in bits(X.opposite[h]) if h < k]
    return cache["op"]


def nested_pairs(X: CubeComplex) -> list[tuple[int, int]]:
    """Nested pairs ``(h, k)`` with ``h < k``, longest first, ties lexicographic."""
    cache = _family_cache(X)
    if "lt" not in cache:
        lengths = X.pair_lengths
        cache["lt"] = sorted(lengths, key=lambda pair: (-lengths[pair], pair))
    return cache["lt"]


def _op_map(pair):
    h, k = pair

    def apply(p: CubePoint) -> CubePoint:
        a, b = p_op(p[h], p[k])
        return p.with_pair(h, k, a, b)
    return apply


def _less_map(pair):
    h, k = pair

    def apply(p: CubePoint) -> CubePoint:
        a, b = p_less(p[h], p[k])
        return p.with_pair(h, k, a, b)
    return apply


def _op_supported(pair, p: CubePoint) -> bool:
    return bool(p[pair[0]]) and bool(p[pair[1]])


def _less_supported(pair, p: CubePoint) -> bool:
    return p[pair[0]] < ONE and bool(p[pair[1]])


class _LazyMaps(dict):
    def __init__(self, factory):
        super().__init__()
        self.factory = factory

    def __missing__(self, key):
        value = self[key] = self.factory(key)
        return value


def project_intervalic(X: CubeComplex, p: CubePoint,
                       order: Sequence[tuple[int, int]] | None = None) -> CubePoint:
    """Retract onto the intervalic points by cancelling opposite pairs in turn.

    The result depends on ``order``; the default is lexicographic.
    """
    _check_support(X, p)
    if order is None:
        order = opposite_pairs(X)
    return ordered_compose(_LazyMaps(_op_map), order, p, _op_supported)


def project_actual(X: CubeComplex, p: CubePoint,
                   order: Sequence[tuple[int, int]] | None = None) -> CubePoint:
    """Retract an intervalic point onto the complex, preserving its l1 norm.

    ``order`` must list nested pairs by non-increasing length; the default
    breaks ties lexicographically.
    """
    _check_support(X, p)
    supp = p.support_mask()
    for h in bits(supp):
        if X.opposite[h] & supp:
            raise NotIntervalic(f"coordinate {h} is positive together with an opposite hyperplane")
    if order is None:
        order = nested_pairs(X)
    return ordered_compose(_LazyMaps(_less_map), order, p, _less_supported)


def project(X: CubeComplex, p: CubePoint) -> CubePoint:
    """Contractive retraction of the cube onto the embedded complex."""
    return project_actual(X, project_intervalic(X, p))
