import json
import subprocess
import sys

import pytest

from monofan import cli
from monofan import corpus
from monofan import fanspace as fs
from monofan import monoid as mon
from monofan.errors import DocumentError

F = corpus.fans()


def _write(tmp_path, name, doc):
    p = tmp_path / f"{name}.json"
    p.write_text(json.dumps(doc))
    return str(p)


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spec_of_N(tmp_path, capsys):
    path = _write(tmp_path, "n", {"kind": "monoid", "ambient_rank": 1, "generators": [[1]]})
    code, out, _ = _run(capsys, ["spec", path])
    doc = json.loads(out)
    assert code == 0 and len(doc["points"]) == 2 and len(doc["order"]) == 1


def test_classify_exit_codes(tmp_path, capsys):
    p2 = _write(tmp_path, "p2", cli.fan_doc(F["projective_plane"]))
    code, out, _ = _run(capsys, ["classify", p2])
    assert code == 0 and json.loads(out)["report"] == "classic toric"
    dl = _write(tmp_path, "dl", cli.space_doc(corpus.doubled_line()))
    code, out, _ = _run(capsys, ["classify", dl])
    report = json.loads(out)["report"]
    assert code == 1 and "separated" in report
    for p in corpus.doubled_line().maximal_points:
        assert p in report
    code, out, _ = _run(capsys, ["report", dl])
    assert code == 1 and out.startswith("# Classification")


def test_input_errors_exit_2(tmp_path, capsys):
    bad = [
        {"kind": "monoid", "ambient_rank": 1, "generators": [[1]], "extra": 1},
        {"kind": "monoid", "ambient_rank": 2, "generators": [[1]]},
        {"kind": "nonsense"},
        {"kind": "cone", "ambient_rank": 1, "rays": [["x"]]},
        {"kind": "monoided_space", "points": ["a", "b"], "order": [["a", "b"], ["b", "a"]],
         "stalks": {"a": {"ambient_rank": 1, "generators": [[1]]}, "b": {"ambient_rank": 1, "generators": [[1]]}}},
    ]
    for i, doc in enumerate(bad):
        code, out, err = _run(capsys, ["spec" if doc["kind"] == "monoid" else "classify", _write(tmp_path, f"b{i}", doc)])
        assert code == 2 and out == "" and err.startswith("error"), doc
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert _run(capsys, ["spec", str(p)])[0] == 2
    assert _run(capsys, ["spec", str(tmp_path / "missing.json")])[0] == 2
    # wrong kind for the command
    cone = _write(tmp_path, "c", {"kind": "cone", "ambient_rank": 1, "rays": [[1]]})
    assert _run(capsys, ["spec", cone])[0] == 2
    # a non-fan is an input error for atlas
    nf = _write(tmp_path, "nf", cli.space_doc(corpus.projective_plane_minus_ray()))
    assert _run(capsys, ["atlas", nf])[0] == 2


def test_big_integers_as_strings(tmp_path, capsys):
    big = 2 ** 70
    path = _write(tmp_path, "big", {"kind": "monoid", "ambient_rank": 1, "generators": [[str(big)]]})
    code, out, _ = _run(capsys, ["saturate", path])
    doc = json.loads(out)
    assert code == 0 and doc["saturation"]["generators"] == [[str(big)]]
    _, S = cli.parse_document(doc["saturation"] | {"kind": "monoid"})
    assert S.generators == ((big,),)


def test_hilbert_and_saturate(tmp_path, capsys):
    cone = _write(tmp_path, "c", {"kind": "cone", "ambient_rank": 2, "rays": [[1, 0], [1, 2]]})
    code, out, _ = _run(capsys, ["hilbert", cone])
    assert json.loads(out)["elements"] == [[1, 0], [1, 1], [1, 2]]
    cusp = _write(tmp_path, "cusp", cli.monoid_doc(corpus.monoids()["cusp"]))
    doc = json.loads(_run(capsys, ["saturate", cusp])[1])
    assert doc["saturated"] is False and doc["witness"] == [1] and doc["saturation"]["generators"] == [[1]]


def test_algebra_and_atlas(tmp_path, capsys):
    cusp = _write(tmp_path, "cusp", cli.monoid_doc(corpus.monoids()["cusp"]))
    doc = json.loads(_run(capsys, ["algebra", cusp, "--degree", "6", "--base", "QQ"])[1])
    assert doc["equations"] == ["x^3 = y^2"] and doc["base_ring"] == "QQ"
    p1 = _write(tmp_path, "p1", cli.fan_doc(F["projective_line"]))
    doc = json.loads(_run(capsys, ["atlas", p1])[1])
    assert doc["inconsistencies"] == [] and len(doc["overlaps"]) == 4
    doc = json.loads(_run(capsys, ["algebra", p1])[1])
    assert len(doc["charts"]) == 2


def test_dot(tmp_path, capsys):
    path = _write(tmp_path, "n2", cli.monoid_doc(corpus.monoids()["N2"]))
    code, out, _ = _run(capsys, ["dot", path])
    assert code == 0 and out.startswith("digraph") and out.count("->") == 4


def test_presented_monoid_classify(tmp_path, capsys):
    path = _write(tmp_path, "t", {"kind": "presented_monoid", "generators": 2, "relations": [[[2, 0], [0, 2]]]})
    code, out, _ = _run(capsys, ["classify", path, "-D", "2"])
    assert code == 1 and json.loads(out)["failures"] == ["integral"]


@pytest.mark.parametrize("name", sorted(corpus.spaces()))
def test_space_documents_round_trip(name):
    X = corpus.spaces()[name]
    doc = json.loads(cli._dump(cli.space_doc(X)))
    kind, Y = cli.parse_document(doc)
    assert kind == "monoided_space" and fs.iso_check(X, Y)


@pytest.mark.parametrize("name", sorted(set(F) - {"cube"}))
def test_fan_documents_round_trip(name):
    _, G = cli.parse_document(json.loads(cli._dump(cli.fan_doc(F[name]))))
    assert {c.minimal() for c in G.cones} == {c.minimal() for c in F[name].cones}


def test_output_file_and_determinism(tmp_path, capsys):
    path = _write(tmp_path, "p2", cli.fan_doc(F["projective_plane"]))
    outs = []
    for k in range(2):
        o = tmp_path / f"out{k}.json"
        assert cli.main(["atlas", path, "-o", str(o), "--seedless"]) == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1] and capsys.readouterr().out == ""


def test_module_entry_point_stdin():
    doc = json.dumps({"kind": "monoid", "ambient_rank": 1, "generators": [[1]]})
    r = subprocess.run([sys.executable, "-m", "monofan", "spec", "-"], input=doc, capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["kind"] == "monoided_space"


def test_parse_rejects_non_documents():
    for doc in ([], 3, {"kind": None}):
        with pytest.raises(DocumentError):
            cli.parse_document(doc)
    with pytest.raises(DocumentError):
        cli.parse_document({"kind": "monoided_space", "points": ["a->b"], "order": [], "stalks": {}})
