import json

import pytest

from pw2dim import io
from pw2dim.cli import main
from pw2dim.graph import k4
from pw2dim.poset import verify_realizer
from pw2dim.standard import standard_example


def write(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


CHAIN = {"elements": ["a", "b", "c"], "relations": [["a", "b"], ["b", "c"]]}


def test_realize_chain(tmp_path, capsys):
    path = write(tmp_path, CHAIN)
    code, out, _ = run(capsys, "realize", "--input", path)
    res = json.loads(out)
    assert code == 0 and len(res["extensions"]) <= 3
    assert res["certificate"] == "verified"


def test_realize_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--seed", "9", "--size", "13")
    assert code == 0
    path = write(tmp_path, out)
    before = (tmp_path / "in.json").read_text()
    code, out, _ = run(capsys, "realize", "-i", path)
    assert code == 0
    P = io.poset_from_json(json.loads(before))
    assert verify_realizer(P, json.loads(out)["extensions"])[0]
    assert (tmp_path / "in.json").read_text() == before


def test_no_verify_warns(tmp_path, capsys):
    code, out, err = run(capsys, "realize", "-i", write(tmp_path, CHAIN), "--no-verify")
    assert code == 0 and "warning" in err
    assert json.loads(out)["certificate"] == "unverified"


def test_recognize_k4(tmp_path, capsys):
    path = write(tmp_path, io.graph_to_json(k4()))
    code, out, _ = run(capsys, "recognize", "-i", path)
    res = json.loads(out)
    assert code == 1 and res["certificate"]["pattern"] == "K4"


def test_recognize_cycle(tmp_path, capsys):
    g = {"vertices": list("abcde"), "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "e"], ["e", "a"]]}
    code, out, _ = run(capsys, "recognize", "-i", write(tmp_path, g))
    res = json.loads(out)
    assert code == 0 and res["f_minor_free"] and res["blocks"][0]["pno"]


def test_dimension_s5(tmp_path, capsys):
    path = write(tmp_path, io.poset_to_json(standard_example(5)))
    code, out, _ = run(capsys, "dimension", "-i", path)
    assert code == 0 and json.loads(out)["dimension"] == 5
    code, out, _ = run(capsys, "dimension", "-i", path, "--t", "4")
    assert code == 1 and json.loads(out)["realizable"] is False


def test_realize_s5_is_negative(tmp_path, capsys):
    code, out, _ = run(capsys, "realize", "-i", write(tmp_path, io.poset_to_json(standard_example(5))))
    assert code == 1 and "certificate" in json.loads(out)


def test_check_s5(tmp_path, capsys):
    code, out, _ = run(capsys, "check-s5", "-i", write(tmp_path, io.poset_to_json(standard_example(5))))
    res = json.loads(out)
    assert code == 0 and res["treewidth"] >= 3
    code, out, _ = run(capsys, "check-s5", "-i", write(tmp_path, io.poset_to_json(standard_example(4))))
    assert code == 1


def test_embed_dot(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--seed", "2", "--size", "12", "--blocks", "1")
    code, out, _ = run(capsys, "embed", "-i", write(tmp_path, out))
    assert code == 0 and out.startswith("graph") and "cluster_" in out


def test_widths(tmp_path, capsys):
    code, out, _ = run(capsys, "widths", "-i", write(tmp_path, io.graph_to_json(k4())))
    res = json.loads(out)
    assert code == 0 and res["treewidth"] == 3 and res["pathwidth"] == 3
    code, out, _ = run(capsys, "widths", "-i", write(tmp_path, io.graph_to_json(k4())), "--format", "dot")
    assert out.count("graph ") == 2


def test_generate_is_deterministic(capsys):
    a = run(capsys, "generate", "--seed", "4", "--size", "10", "--mode", "pw2")[1]
    b = run(capsys, "generate", "--seed", "4", "--size", "10", "--mode", "pw2")[1]
    assert a == b and "covers" in json.loads(a)


@pytest.mark.parametrize("kind", ["tree", "outerplanar", "s5"])
def test_generate_kinds(capsys, kind):
    code, out, _ = run(capsys, "generate", "--kind", kind, "--size", "12")
    assert code == 0 and len(json.loads(out)["elements"]) == 12


def test_parse_error_has_position(tmp_path, capsys):
    code, _, err = run(capsys, "realize", "-i", write(tmp_path, '{"elements": [1, 2,\n  ]}'))
    assert code == 2 and ":2:" in err


@pytest.mark.parametrize("bad", [
    {"elements": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]},
    {"elements": ["a"], "relations": [["a", "z"]]},
    {"elements": "ab"},
    {"nothing": []},
])
def test_input_errors(tmp_path, capsys, bad):
    code, out, err = run(capsys, "dimension", "-i", write(tmp_path, bad))
    assert code == 2 and out == "" and err.startswith("error")


def test_missing_file(capsys):
    assert run(capsys, "dimension", "-i", "/nonexistent/file.json")[0] == 2


def test_cap_exceeded(tmp_path, capsys):
    P = {"elements": [str(i) for i in range(20)], "relations": []}
    code, _, err = run(capsys, "dimension", "-i", write(tmp_path, P), "--cap", "10")
    assert code == 3 and "20" in err
