"""Reading and writing complexes, colourings and points as text or JSON.

Complex text files start with ``hyperplanes: N`` and list one vertex per
line as sorted ids, the basepoint as ``-``. ``#`` starts a comment.
Rationals are written ``p/q`` in lowest terms, or ``0``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .core import CubeComplex, to_mask
from .errors import FormatError
from .geometry import CubePoint

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
_HEADER = re.compile(r"^hyperplanes\s*:\s*(\d+)$")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"expected a rational written p/q, got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise FormatError(f"expected a rational written p/q, got {text!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise FormatError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _vertex_mask(ids, n: int, where: str) -> int:
    seen = set()
    for h in ids:
        if isinstance(h, bool) or not isinstance(h, int):
            raise FormatError(f"{where}: hyperplane ids must be integers, got {h!r}")
        if not 0 <= h < n:
            raise FormatError(f"{where}: hyperplane id {h} is outside 0..{n - 1}")
        if h in seen:
            raise FormatError(f"{where}: hyperplane id {h} repeated")
        seen.add(h)
    return to_mask(seen)


def _complex_from(n: int, rows: list[tuple[str, list[int]]]) -> CubeComplex:
    masks, first_seen = [], {}
    for where, ids in rows:
        m = _vertex_mask(ids, n, where)
        if m in first_seen:
            raise FormatError(f"{where}: duplicate of the vertex at {first_seen[m]}")
        first_seen[m] = where
        masks.append(m)
    return CubeComplex(n, masks)


def _parse_complex_json(text: str) -> CubeComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict) or "hyperplanes" not in doc or "vertices" not in doc:
        raise FormatError('complex JSON needs "hyperplanes" and "vertices"')
    n = doc["hyperplanes"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise FormatError('"hyperplanes" must be a non-negative integer')
    if not isinstance(doc["vertices"], list) or not all(isinstance(v, list) for v in doc["vertices"]):
        raise FormatError('"vertices" must be a list of id lists')
    return _complex_from(n, [(f"vertex {i}", v) for i, v in enumerate(doc["vertices"])])


def _parse_complex_text(text: str) -> CubeComplex:
    n = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"line {lineno}"
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise FormatError(f"{where}: expected 'hyperplanes: N' header")
            n = int(m.group(1))
            continue
        if line == "-":
            rows.append((where, []))
            continue
        try:
            ids = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"{where}: vertices are space-separated ids or '-'") from None
        rows.append((where, ids))
    if n is None:
        raise FormatError("missing 'hyperplanes: N' header")
    return _complex_from(n, rows)


def parse_complex(text: str) -> CubeComplex:
    """Parse either format; validation errors of the complex itself propagate."""
    return _parse_complex_json(text) if _is_json(text) else _parse_complex_text(text)


def complex_to_text(X: CubeComplex) -> str:
    lines = [f"hyperplanes: {X.hyperplane_count}"]
    for v in X.vertices:
        lines.append(" ".join(map(str, sorted(v))) if v else "-")
    return "\n".join(lines) + "\n"


def complex_to_json(X: CubeComplex) -> dict:
    return {"hyperplanes": X.hyperplane_count, "vertices": [sorted(v) for v in X.vertices]}


def load_complex(path) -> CubeComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def save_complex(X: CubeComplex, path, as_json: bool | None = None):
    path = Path(path)
    if as_json is None:
        as_json = path.suffix == ".json"
    text = json.dumps(complex_to_json(X)) + "\n" if as_json else complex_to_text(X)
    path.write_text(text, encoding="utf-8")


# -- points ---------------------------------------------------------------------

def point_to_json(p: CubePoint) -> dict:
    return {str(h): format_rational(v) for h, v in p.items()}


def point_to_text(p: CubePoint) -> str:
    return "".join(f"{h}: {format_rational(v)}\n" for h, v in p.items())


def _point_id(key, where: str) -> int:
    try:
        h = int(key)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: hyperplane id {key!r} is not an integer") from None
    if h < 0:
        raise FormatError(f"{where}: negative hyperplane id {h}")
    return h


def _point(entries: list[tuple[str, int, Fraction]]) -> CubePoint:
    coords = {}
    for where, h, v in entries:
        if h in coords:
            raise FormatError(f"{where}: coordinate {h} given twice")
        coords[h] = v
    try:
        return CubePoint(coords)
    except ValueError as e:
        raise FormatError(str(e)) from None


def parse_point(text: str) -> CubePoint:
    if _is_json(text):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid JSON: {e}") from None
        return _point([(f"key {k!r}", _point_id(k, f"key {k!r}"), parse_rational(v)) for k, v in doc.items()])
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"line {lineno}"
        if ":" not in line:
            raise FormatError(f"{where}: expected 'id: p/q'")
        key, value = line.split(":", 1)
        entries.append((where, _point_id(key.strip(), where), parse_rational(value)))
    return _point(entries)


def load_point(path) -> CubePoint:
    return parse_point(Path(path).read_text(encoding="utf-8"))


def colouring_to_text(colours: Mapping[int, int] | tuple, control: int) -> str:
    cols = colours if isinstance(colours, tuple) else tuple(colours[h] for h in sorted(colours))
    lines = [f"control: {control}"]
    lines += [f"{h}: {c}" for h, c in enumerate(cols)]
    return "\n".join(lines) + "\n"
