import json

import pytest

from ginipart.cli import main
from ginipart.dataset import InstanceDocument, ingest_csv
from ginipart.impurity import DomainError

FIXTURES = [
    ("weather.csv", "outlook", "play"),
    ("colors.csv", "color", "label"),
    ("mushrooms.csv", "cap shape", "class"),
]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def v3_json(tmp_path):
    p = tmp_path / "v3.json"
    p.write_text(json.dumps({"d": 2, "n": 3, "k": 2, "classes": ["x", "y"], "values": ["p", "q", "r"], "vectors": [[4, 0], [0, 4], [3, 1]]}))
    return p


def test_ingest_counts(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("attr,cls\na,red\na,red\nb,blue\n")
    doc = ingest_csv(p, "attr", "cls")
    assert doc.values == ["a", "b"]
    assert doc.classes == ["red", "blue"]
    assert doc.vectors.tolist() == [[2, 0], [0, 1]]


def test_ingest_weather(data_dir):
    doc = ingest_csv(data_dir / "weather.csv", "outlook", "play")
    assert doc.values == ["sunny", "overcast", "rainy"]
    assert doc.classes == ["no", "yes"]
    assert doc.vectors.tolist() == [[3, 2], [0, 4], [2, 3]]


def test_ingest_handles_quoted_fields(data_dir):
    doc = ingest_csv(data_dir / "mushrooms.csv", "odor", "class")
    assert "almond, sweet" in doc.values
    assert doc.vectors.sum() == 60


@pytest.mark.parametrize("name, attr, cls", FIXTURES)
def test_round_trip(data_dir, tmp_path, capsys, name, attr, cls):
    out = tmp_path / "inst.json"
    code, stdout, _ = run(capsys, "ingest", data_dir / name, "--attribute", attr, "--class-column", cls, "--out", out)
    assert code == 0
    direct = ingest_csv(data_dir / name, attr, cls)
    reloaded = InstanceDocument.load(out)
    assert reloaded.instance() == direct.instance()
    assert reloaded.classes == direct.classes and reloaded.values == direct.values
    assert InstanceDocument.from_json(stdout).to_dict() == direct.to_dict()


@pytest.mark.parametrize(
    "content, msg",
    [
        ("", "empty file"),
        ("attr,cls\n", "no data rows"),
        ("attr,cls\na,\n", "line 2"),
        ("attr,cls\na,x\nb\n", "line 3"),
        ("foo,cls\na,x\n", "no column named 'attr'"),
    ],
)
def test_ingest_errors(tmp_path, content, msg):
    p = tmp_path / "bad.csv"
    p.write_text(content)
    with pytest.raises(DomainError, match=msg):
        ingest_csv(p, "attr", "cls")


def test_solve_brute(capsys, v3_json):
    code, out, _ = run(capsys, "solve", v3_json, "--solver", "brute", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["objective1"] == pytest.approx(1.75)
    assert doc["groups"] == [["p", "r"], ["q"]]
    assert {"instance", "solver", "seed", "assignment", "objective1", "objective2", "wall_time_ms"} <= set(doc)


@pytest.mark.parametrize("solver", ["brute", "lloyd", "ptas"])
def test_solve_schema_and_timing(capsys, v3_json, solver):
    _, out, _ = run(capsys, "solve", v3_json, "--solver", solver)
    assert json.loads(out)["wall_time_ms"] is None
    _, out, _ = run(capsys, "solve", v3_json, "--solver", solver, "--timing")
    assert json.loads(out)["wall_time_ms"] >= 0


def test_solve_from_csv(capsys, data_dir):
    code, out, _ = run(
        capsys, "solve", data_dir / "weather.csv", "--attribute", "outlook", "--class-column", "play", "--solver", "brute"
    )
    assert code == 0
    assert json.loads(out)["groups"] == [["sunny", "rainy"], ["overcast"]]


def test_solve_lloyd_deterministic(capsys, data_dir):
    args = ["solve", data_dir / "mushrooms.csv", "--attribute", "cap shape", "--class-column", "class", "--k", "3", "--solver", "lloyd", "--seed", "7"]
    outs = [run(capsys, *args)[1] for _ in range(2)]
    outs.append(run(capsys, *args, "--threads", "4")[1])
    assert outs[0] == outs[1] == outs[2]


def test_impurity(capsys, v3_json):
    code, out, _ = run(capsys, "impurity", v3_json)
    doc = json.loads(out)
    assert code == 0
    assert doc["values"][2]["gini"] == pytest.approx(0.375)
    assert doc["values"][2]["entropy"] == pytest.approx(0.5623351446188083)
    assert doc["sum_weighted_gini"] == pytest.approx(1.5)
    _, out, _ = run(capsys, "impurity", v3_json, "--base2")
    assert json.loads(out)["values"][2]["entropy"] == pytest.approx(0.8112781244591328)


def test_reduce(capsys, v3_json):
    code, out, _ = run(capsys, "reduce", v3_json)
    doc = json.loads(out)
    assert code == 0
    assert doc["total_weight"] == 12
    assert doc["points"][2] == {"coords": [0.75, 0.25], "weight": 4, "origin": 2}
    assert set(doc) == {"d", "k", "points", "total_weight"}


def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify-identity", "--vectors", "1,1;2,0")
    doc = json.loads(out)
    assert code == 0
    assert doc["corrected"]["gap"] <= 1e-9 and doc["corrected"]["holds"]
    assert doc["printed"]["gap"] == pytest.approx(1.5)
    assert not doc["printed"]["holds"]


def test_hardness_gen_and_check(capsys, tmp_path):
    g = tmp_path / "g.txt"
    code, out, _ = run(capsys, "hardness", "gen", "--seed", "4", "--vertices", "6", "--p", "0.5", "--out", g)
    assert code == 0
    doc = json.loads(out)
    assert g.read_text() == doc["edge_list"]
    assert all(sum(v) == 2 for v in doc["instance"]["vectors"])
    code, out, _ = run(capsys, "hardness", "check", g)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "hardness", "gen", "--bipartite", "2,3")
    assert json.loads(out)["num_edges"] == 6


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--trials", "4", "--seed", "1", "--rounds", "2", "--max-n", "6")
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["lloyd"]["dominance_violations"] == 0
    assert doc["summary"]["ptas"]["dominance_violations"] == 0


# exit-code contract: 1 domain/input error, 2 usage error
def test_exit_codes(capsys, tmp_path, v3_json):
    tri = tmp_path / "tri.txt"
    tri.write_text("p 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    zero = tmp_path / "zero.json"
    zero.write_text(json.dumps({"k": 1, "vectors": [[0, 0], [1, 2]]}))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    headers = tmp_path / "h.csv"
    headers.write_text("attr,cls\n")
    cases = [
        (["solve", tmp_path / "missing.json"], 1),
        (["solve", zero], 1),
        (["solve", broken], 1),
        (["ingest", headers, "--attribute", "attr", "--class-column", "cls"], 1),
        (["ingest", headers, "--attribute", "nope", "--class-column", "cls"], 1),
        (["hardness", "check", tri], 1),
        (["verify-identity", "--vectors", "1,1;3,0"], 1),
        (["frobnicate"], 2),
        (["solve"], 2),
        (["solve", v3_json, "--solver", "magic"], 2),
        (["solve", v3_json, "--k", "5"], 2),
        (["solve", headers], 2),
        (["verify-identity", "--vectors", "1,x"], 2),
        (["verify-identity"], 2),
        (["bench", "--solvers", "nope"], 2),
    ]
    for argv, expected in cases:
        code, out, err = run(capsys, *argv)
        assert code == expected, (argv, code, err)
        assert out == ""
        assert err
