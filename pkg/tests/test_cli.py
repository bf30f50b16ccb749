import json
import subprocess
import sys

import pytest

from zhatn import errors
from zhatn.cli import COMMANDS, main, run


def call(command, payload, N=2, seed=None, rank_bound=8):
    text = payload if isinstance(payload, str) else json.dumps(payload)
    return run(command, N, text, seed, rank_bound)


def test_split_example():
    code, doc = call("split", [["1/2", "1/2"], ["1/2", "1/2"]])
    assert code == 0
    assert doc == {"rank": 1, "J": [["1/2"], ["1/2"]], "Q": [["1", "1"]]}


def test_kclass_example():
    assert call("kclass", [["2", "0"], ["1", "4"]]) == (0, {"rank": 2, "deg": {"2": 3}})


def test_iso_example():
    code, doc = call("iso", [[["2", "0"], ["1", "4"]], [["1", "0"], ["2", "8"]]])
    assert (code, doc) == (0, {"isomorphic": True})
    code, doc = call("iso", {"bundles": [[["2"]], [["1"]]]})
    assert (code, doc) == (0, {"isomorphic": False})


def test_canonical_and_rank():
    code, doc = call("canonical", [["2", "0"], ["1", "4"]])
    assert code == 0
    assert doc == {"hnf": [["2", "0"], ["1", "4"]], "canonical": [["1", "0"], ["2", "8"]], "diagonal": ["1", "8"]}
    assert call("rank", [["1", "1"], ["0", "0"]]) == (0, {"rank": 1})
    assert call("validate-idempotent", [["1"]]) == (0, {"idempotent": True, "n": 1})


def test_pic_commands():
    assert call("pic", {"op": "log", "x": "8/3"}, N=6) == (0, {"exps": [3, -1], "deg": {"2": 3, "3": -1}})
    assert call("pic", {"op": "value", "a": [-1]}) == (0, {"value": "1/2"})
    assert call("pic", {"op": "line", "a": [2]}) == (0, {"matrix": [["4"]]})
    assert call("pic", {"op": "add", "a": [1, 0], "b": [0, 1]}, N=6)[1]["exps"] == [1, 1]
    assert call("pic", {"op": "neg", "a": [2]})[1]["exps"] == [-2]
    assert call("pic", {"op": "zero"}, N=30)[1]["exps"] == [0, 0, 0]


def test_topo_and_localize():
    assert call("topo", {"op": "is_open", "space": "ZhatN", "complement": ["p:3"]}) == (0, {"open": False})
    assert call("topo", {"op": "closure", "point": "p:3"}) == (0, {"closure": ["p:3", "inf"]})
    assert call("topo", {"op": "closure", "point": "0"}) == (0, {"closure": "whole"})
    assert call("topo", {"op": "stalk", "point": "inf", "a": "1/2"}) == (0, {"in_ideal": True})
    assert call("localize", "5") == (0, {"a": "5/8", "k": 3})
    assert call("localize", {"x": "1/2"}) == (0, {"a": "1/2", "k": 0})


def test_lawcheck():
    code, doc = call("lawcheck", {"mode": "all", "samples": 20}, seed=1)
    assert code == 0 and doc["passed"]
    assert [r["mode"] for r in doc["reports"]] == ["associativity", "unit", "commutativity"]
    code, doc = call("lawcheck", {"mode": "unit"})
    assert code == 2 and doc["error"] == "MalformedInput"
    assert call("lawcheck", {"mode": "bogus"}, seed=1)[0] == 2
    assert call("lawcheck", {"samples": 0}, seed=1)[0] == 2


@pytest.mark.parametrize(
    "command, payload, N, code, error",
    [
        ("validate-idempotent", [["1/2", "0"], ["0", "1/2"]], 2, 1, "NotIdempotent"),
        ("validate-idempotent", [["1", "0"]], 2, 1, "ShapeMismatch"),
        ("split", [["1", "1"], ["1", "0"]], 2, 1, "NotInBall"),
        ("kclass", [["1", "0"], ["0", "3"]], 2, 1, "NotInvertible"),
        ("pic", {"op": "log", "x": "5"}, 6, 1, "NotAPositiveUnit"),
        ("topo", {"op": "closure", "space": "SpecAN", "point": "p:2"}, 2, 1, "PointNotInSpace"),
        ("split", [["1/3"]], 2, 2, "NotInZ1N"),
        ("split", "[[0.5]]", 2, 2, "MalformedInput"),
        ("split", "not json", 2, 2, "MalformedInput"),
        ("pic", {"op": "frobnicate"}, 2, 2, "MalformedInput"),
        ("split", [["1"]], 1, 2, "InvalidModulus"),
    ],
)
def test_error_exit_codes(command, payload, N, code, error):
    got_code, doc = call(command, payload, N=N)
    assert got_code == code
    assert doc["error"] == error
    assert doc["message"]


def test_error_names_location():
    _, doc = call("validate-idempotent", [["1/2", "0"], ["0", "1/2"]])
    assert (doc["row"], doc["column"]) == (0, 0)
    _, doc = call("split", [["1", "1"], ["1", "0"]])
    assert doc["column"] == 0


def test_feasibility_guard():
    code, doc = call("canonical", [["1", "0"], ["0", "1"]], rank_bound=1)
    assert (code, doc["error"]) == (3, "FeasibilityError")


@pytest.mark.parametrize(
    "exc",
    [errors.PreconditionViolation("x"), errors.CertificateConstructionFailed("x"), errors.InternalInconsistency("x"), RuntimeError("x")],
)
def test_every_error_maps_to_documented_code(monkeypatch, exc):
    def boom(ctx, payload, args):
        raise exc

    monkeypatch.setitem(COMMANDS, "rank", boom)
    code, doc = call("rank", [["1"]])
    expected = exc.exit_code if isinstance(exc, errors.ZhatNError) else 4
    assert code == expected
    assert doc["error"] == type(exc).__name__


def test_main_reads_file_and_writes_json(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text('[["2","0"],["1","4"]]')
    assert main(["kclass", "--N", "2", "--in", str(f)]) == 0
    assert capsys.readouterr().out == '{"rank":2,"deg":{"2":3}}\n'
    assert main(["kclass", "--N", "2", "--in", str(tmp_path / "missing.json")]) == 2


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "zhatn", "lawcheck", "--N", "6", "--seed", "9"]
    runs = [
        subprocess.run(cmd, input='{"samples":10}', capture_output=True, text=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["passed"] is True


def test_stderr_diagnostic():
    proc = subprocess.run(
        [sys.executable, "-m", "zhatn", "split", "--N", "2"], input='[["1/3"]]', capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "NotInZ1N" in proc.stderr
    assert json.loads(proc.stdout)["error"] == "NotInZ1N"
