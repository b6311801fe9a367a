import json

import pytest

from e6v import checks, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_registry_size_pinned():
    names = checks.check_names()
    assert len(names) == 51
    for n in ("theorem1", "graph_census", "involutions", "cubes", "lemma1", "thm2", "thm3", "thm4",
              "eq56", "eq57", "eq610", "eq611", "q27_consistency", "sw_examples", "sw_interpolation",
              "a15", "kahn"):
        assert n in names


def test_verify_single_json(capsys):
    code, out, _ = run(capsys, "verify", "--check", "theorem1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"][0]["check"] == "theorem1"
    assert doc["results"][0]["status"] == "pass"
    assert "theorem1" in doc["timing"]


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "--check", "nosuch")
    assert code == 2
    assert "theorem1" in err


def test_verify_bad_trials(capsys):
    code, _, _ = run(capsys, "verify", "--check", "thm3", "--trials", "0")
    assert code == 2


def test_verify_repeatable_and_deterministic(capsys):
    argv = ("verify", "--check", "thm4", "--check", "eq56", "--trials", "3", "--rng-seed", "7", "--json", "--no-timing")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert [r["check"] for r in json.loads(a)["results"]] == ["thm4", "eq56"]


def test_verify_text_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(capsys, "verify", "roots", "sw_examples")
    assert code == 0
    assert "\033[" not in out and "PASS" in out


def test_twist_compare(capsys):
    code, out, _ = run(capsys, "twist", "--classes", "-1,2,3,5", "--form", "q27", "--compare", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["comparison"]["verdict"] is True
    assert doc["comparison"]["left_invariants"] == doc["comparison"]["right_invariants"]


@pytest.mark.parametrize("form", ["q4", "q5", "q6", "q7", "q45"])
def test_twist_other_forms(capsys, form):
    code, out, _ = run(capsys, "twist", "--classes", "-1,2,3,5", "--form", form, "--compare")
    assert code == 0 and "isometric" in out


def test_twist_bad_classes(capsys):
    assert run(capsys, "twist", "--classes", "1,2,0,3")[0] == 2
    assert run(capsys, "twist", "--classes", "1,2")[0] == 2


def test_form_invariants(capsys):
    code, out, _ = run(capsys, "form", "invariants", "--diag", "1,2,-3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["invariants"]["rank"] == 3 and doc["invariants"]["disc"] == -6
    assert run(capsys, "form", "invariants", "--diag", "1,0")[0] == 2
    assert run(capsys, "form", "invariants", "--diag", "a,b")[0] == 2


def test_sw(capsys):
    code, out, _ = run(capsys, "sw", "--m", "6,10,12,12", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["p"][0] == [0, 1, 0, 1, 0, 1]
    code, out, _ = run(capsys, "sw", "--gset", "triangles", "--kahn", "--json")
    doc = json.loads(out)
    assert doc["m"] == [15, 20, 19, 16]
    assert doc["trace_form"]["graded"][2] == {"degree": 2, "class": "(e+t)w1"}
    assert run(capsys, "sw", "--m", "1,1,0,0")[0] == 1
    assert run(capsys, "sw")[0] == 2


def test_graph_export(capsys, tmp_path):
    path = tmp_path / "omega.dot"
    assert run(capsys, "graph", "export", "--format", "dot", "--out", str(path))[0] == 0
    text = path.read_text()
    assert text.count(" -- ") == 135 and text.count("[label=") == 27
    assert run(capsys, "graph", "export", "--format", "dot")[1] == text


def test_export_kinds(capsys, tmp_path):
    _, out, _ = run(capsys, "export", "--kind", "lattice")
    d = json.loads(out)
    assert len(d["roots"]) == 72 and len(d["lines"]) == 27
    _, out, _ = run(capsys, "export", "--kind", "group")
    assert json.loads(out)["order"] == 51840
    assert run(capsys, "export", "--kind", "group", "--format", "dot")[0] == 2
    assert run(capsys, "export", "--kind", "lattice", "--out", str(tmp_path / "no" / "x.json"))[0] == 1


def test_group(capsys):
    code, out, _ = run(capsys, "group", "involutions", "--summary", "--json")
    assert json.loads(out)["counts"] == [1, 36, 270, 540, 45]
    code, out, _ = run(capsys, "group", "cubes")
    assert "135 maximal cubes" in out


def test_negative_list_argument():
    assert cli._join_negative_lists(["twist", "--classes", "-1,2,3,5"]) == ["twist", "--classes=-1,2,3,5"]
    assert cli._join_negative_lists(["verify", "--json"]) == ["verify", "--json"]


SCHEMA_DIR = __import__("pathlib").Path(__file__).resolve().parents[1] / "docs" / "schemas"

OUTPUTS = {
    "verify": ("verify", "--json", "--trials", "1", "roots", "a15"),
    "twist": ("twist", "--classes", "-1,2,3,5", "--form", "q7", "--compare", "--json"),
    "form": ("form", "invariants", "--diag", "1,-1,2", "--json"),
    "sw": ("sw", "--gset", "lines", "--kahn", "--json"),
    "graph": ("graph", "export", "--format", "json"),
    "involutions": ("group", "involutions", "--json"),
    "cubes": ("group", "cubes", "--json"),
    "lattice": ("export", "--kind", "lattice"),
    "group": ("export", "--kind", "group"),
}


@pytest.mark.parametrize("name", sorted(OUTPUTS))
def test_output_matches_documented_schema(capsys, name):
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
    code, out, _ = run(capsys, *OUTPUTS[name])
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == schema["properties"]["schema"]["const"] == schema["$id"]
    assert set(schema["required"]) <= set(doc) <= set(schema["properties"])
