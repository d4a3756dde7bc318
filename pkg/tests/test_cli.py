import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from polyball import OperatorTuple, __version__
from polyball.cli import main
from polyball.io import dump_tuple


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(map(str, argv)), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, X in {
        "zero": OperatorTuple.zeros((1,)),
        "half": OperatorTuple.from_scalars([[0.5]]),
        "edge": OperatorTuple.from_scalars([[1.0], [0.0]]),
        "bidisk": OperatorTuple.from_scalars([[0.5], [0.3]]),
        "bidisk0": OperatorTuple.zeros((1, 1)),
        "ball": OperatorTuple.from_scalars([[0.3, 0.4]]),
        "ball0": OperatorTuple.zeros((2,)),
        "nil": OperatorTuple([[0.5 * np.eye(2, k=-1)]]),
        "near": OperatorTuple.from_scalars([[0.999]]),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        dump_tuple(X, paths[name])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    paths["bad"] = bad
    return paths


def test_membership(files):
    code, out, _ = run("membership", files["zero"])
    doc = json.loads(out)
    assert code == 0 and doc["region"] == "interior" and doc["defect_min_eig"] == 1.0
    assert doc["version"] == __version__
    assert json.loads(run("membership", files["edge"])[1])["region"] == "closure_boundary"


def test_malformed_json_exit_2(files):
    code, out, err = run("membership", files["bad"])
    assert code == 2 and out == "" and "malformed" in err


def test_distance_examples(files):
    code, out, _ = run("distance", files["half"], files["half"])
    assert code == 0 and json.loads(out)["value"] == 0.0
    doc = json.loads(run("distance", files["half"], files["zero"], "--metric", "dp")[1])
    assert doc["value"] == pytest.approx(0.5 * math.log(3), abs=1e-6)
    assert doc["converged"] and doc["version"] == __version__
    doc = json.loads(run("distance", files["bidisk"], files["bidisk0"], "--metric", "kobayashi")[1])
    assert doc["value"] == pytest.approx(0.5 * math.log(3))
    doc = json.loads(run("distance", files["half"], files["zero"], "--metric", "dP-aux")[1])
    assert doc["value"] == pytest.approx(2.0, abs=1e-6)


def test_distance_error_codes(files):
    code, _, err = run("distance", files["ball"], files["ball0"], "--metric", "dh-polydisk")
    assert code == 3 and "polydisk only" in err
    assert run("distance", files["half"], files["bidisk"])[0] == 2
    assert run("distance", files["edge"], files["bidisk0"])[0] == 3


def test_output_is_deterministic(files):
    args = ("distance", files["bidisk"], files["bidisk0"], "--metric", "dh-polydisk")
    assert run(*args)[1] == run(*args)[1]


def test_converge_csv_and_flags(files):
    code, out, _ = run("converge", files["half"], files["zero"], "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == f"# version {__version__}"
    assert lines[1] == "L,value,delta_vs_previous,raw,converged"
    assert lines[-1].endswith("true")
    doc = json.loads(run("converge", files["nil"], files["zero"].parent / "nil.json")[1])
    assert doc["converged"]


def test_converge_reports_unconverged_at_cap(files):
    code, out, _ = run("converge", files["near"], files["zero"], "--cap", "64")
    doc = json.loads(out)
    assert code == 0 and doc["converged"] is False
    assert doc["rows"][-1]["L"] == [48]


def test_verify_unknown_suite_exit_2():
    assert run("verify", "nonsense")[0] == 2


def test_verify_runs_a_suite():
    code, out, _ = run("verify", "kernel-identities", "--samples", "2", "--seed", "4")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["seed"] == 4


def test_kernel_examples(files):
    code, out, _ = run("kernel", files["zero"], "--which", "poisson", "--L", "3")
    doc = json.loads(out)
    M = np.array(doc["matrix"])[..., 0]
    assert code == 0 and np.array_equal(M, np.eye(4))
    assert doc["basis"] == [[[]], [[1]], [[1, 1]], [[1, 1, 1]]]
    code, out, _ = run("kernel", files["nil"], "--which", "cauchy", "--L", "3")
    C = np.array(json.loads(out)["matrix"])
    C = C[..., 0] + 1j * C[..., 1]
    blocks = C.reshape(4, 2, 4, 2)
    for i in range(4):
        for j in range(4):
            nonzero = np.any(blocks[i, :, j, :] != 0)
            assert nonzero == (i - j in (0, 1))
    code, _, err = run("kernel", files["edge"], "--which", "cauchy")
    assert code == 3 and "factor 1" in err


def test_bad_flag_exit_2():
    assert run("distance", "--metric", "nope", "a", "b")[0] == 2


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "polyball", "membership", str(files["zero"])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["region"] == "interior"
