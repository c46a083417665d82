import json

import numpy as np
import pytest

from simplicial_gap.serialize import csv_lines, fmt_float, json_canonical


def test_fmt_float_round_trips():
    rng = np.random.default_rng(11)
    values = list(rng.normal(scale=1e3, size=50)) + [0.0, 1.0, np.pi, 2.0 / 3.0]
    for v in values:
        assert float(fmt_float(float(v))) == float(v)


def test_json_canonical_is_sorted_with_newline():
    text = json_canonical({"b": 1, "a": {"d": 2, "c": 3}})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"b": 1, "a": {"d": 2, "c": 3}}
    assert json_canonical({"b": 1, "a": {"d": 2, "c": 3}}) == text


def test_csv_lines_checks_width():
    text = csv_lines(["x", "y"], [["1", "2"]])
    assert text == "x,y\n1,2\n"
    with pytest.raises(ValueError):
        csv_lines(["x", "y"], [["1"]])
