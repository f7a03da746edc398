import json
from fractions import Fraction as F

import pytest

from ccdim import CubePoint
from ccdim.errors import FormatError, NotMedianClosed
from ccdim.generators import ell_grid, random_median
from ccdim.io import (
    complex_to_json,
    complex_to_text,
    format_rational,
    load_complex,
    parse_complex,
    parse_point,
    parse_rational,
    point_to_json,
    point_to_text,
    save_complex,
)


def test_rationals():
    assert format_rational(F(0)) == "0"
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(F(-1, 3)) == "-1/3"
    assert parse_rational("2/4") == F(1, 2)
    assert parse_rational(" 3 ") == 3
    assert parse_rational(1) == 1
    for bad in ["1/0", "0.5", "a/b", "", 0.5]:
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_complex_round_trip(tmp_path):
    X = random_median((4, 4, 3), 10, 0)
    for name in ("x.complex", "x.json"):
        save_complex(X, tmp_path / name)
        Y = load_complex(tmp_path / name)
        assert Y.vertices == X.vertices and Y.hyperplane_count == X.hyperplane_count
    assert json.loads((tmp_path / "x.json").read_text()) == complex_to_json(X)
    assert parse_complex(complex_to_text(ell_grid())).vertices == ell_grid().vertices


def test_text_format_details():
    text = "# a square\nhyperplanes: 2\n\n-\n0   # first\n1\n0 1\n"
    X = parse_complex(text)
    assert X.vertex_count == 4
    assert complex_to_text(X).splitlines()[:2] == ["hyperplanes: 2", "-"]


@pytest.mark.parametrize("text", [
    "hyperplanes: 2\n-\n0\n2\n",
    "hyperplanes: 2\n-\n0\n0\n",
    "hyperplanes: 2\n-\n0 0\n",
    "-\n0\n",
    "hyperplanes: two\n-\n",
    "hyperplanes: 1\n-\nx\n",
    "",
    '{"hyperplanes": 2, "vertices": [[], [0], [2]]}',
    '{"hyperplanes": 2, "vertices": [[], [0], [0]]}',
    '{"hyperplanes": 2}',
    '{"hyperplanes": -1, "vertices": [[]]}',
    '{"hyperplanes": 1, "vertices": [[], ["0"]]}',
    '{"hyperplanes": 1, "vertices": [[], [0]',
])
def test_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_complex(text)


def test_complex_errors_propagate():
    with pytest.raises(NotMedianClosed):
        parse_complex("hyperplanes: 3\n-\n0\n1\n2\n0 1\n1 2\n0 2\n")


def test_points_round_trip():
    p = CubePoint({0: F(1, 2), 3: F(2, 7), 5: 1})
    assert parse_point(point_to_text(p)) == p
    assert parse_point(json.dumps(point_to_json(p))) == p
    assert point_to_json(p) == {"0": "1/2", "3": "2/7", "5": "1"}
    assert parse_point("# nothing\n") == CubePoint({})
    for bad in ["0: 3/2\n", "0 1/2\n", "x: 1/2\n", "0: 1/2\n0: 1/3\n", '{"-1": "1/2"}']:
        with pytest.raises(FormatError):
            parse_point(bad)
