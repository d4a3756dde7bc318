import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyball import OperatorTuple, __version__
from polyball.errors import InvalidInputError
from polyball.io import (RunConfig, dump_tuple, dumps, load_tuple, matrix_from_json,
                         matrix_to_json, tuple_from_dict, tuple_to_dict)

cplx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.lists(st.lists(cplx, min_size=d, max_size=d),
                                                     min_size=d, max_size=d)))
def test_matrix_round_trip(rows):
    M = np.array(rows, dtype=complex)
    np.testing.assert_array_equal(matrix_from_json(json.loads(json.dumps(matrix_to_json(M)))), M)


def test_tuple_round_trip(tmp_path):
    X = OperatorTuple([[np.eye(2) * 0.1, np.eye(2) * 0.2j], [np.diag([0.3, -0.1])]])
    path = tmp_path / "x.json"
    dump_tuple(X, path, label="demo")
    Y, label = load_tuple(path)
    assert Y == X and label == "demo"
    assert json.loads(path.read_text())["version"] == __version__


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": np.float64(0.5)}) == dumps({"a": 0.5, "b": 1})
    assert dumps({"a": 1}).endswith("\n")


@pytest.mark.parametrize("obj", [
    [],
    {"shape": [1], "d": 1},
    {"shape": [1], "d": 1, "matrices": {}},
    {"shape": [1], "d": 1, "matrices": {"X_1_1": [[[0.1, 0]]], "X_2_1": [[[0, 0]]]}},
    {"shape": [1], "d": 2, "matrices": {"X_1_1": [[[0.1, 0]]]}},
    {"shape": [1], "d": 1, "matrices": {"X_1_1": [[0.1]]}},
])
def test_malformed_tuples_rejected(obj):
    with pytest.raises(InvalidInputError):
        tuple_from_dict(obj)


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InvalidInputError):
        load_tuple(bad)
    with pytest.raises(InvalidInputError):
        load_tuple(tmp_path / "missing.json")


def test_run_config(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"L": 16, "seed": 3, "r_grid": [0.5, 0.9]}))
    cfg = RunConfig.from_file(path, seed=7)
    assert cfg.L == 16 and cfg.seed == 7 and cfg.r_grid == [0.5, 0.9]
    assert RunConfig(L=[4, 6]).L == (4, 6)
    for bad in ({"tol_psd": 0}, {"format": "xml"}, {"r_grid": [1.5]}, {"L": 0}):
        with pytest.raises(InvalidInputError):
            RunConfig(**bad)
    path.write_text(json.dumps({"colour": 1}))
    with pytest.raises(InvalidInputError):
        RunConfig.from_file(path)
