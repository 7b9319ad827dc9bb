import csv
import io
import json

import pytest

from rpsdist import enumerate_pes
from rpsdist.cli import main
from rpsdist.document import DocumentError, dumps, loads, parse_document

TWO_SOURCES = {
    "frame": ["a", "b", "c"],
    "pmfs": {
        "Perm1": [{"event": ["a"], "mass": 0.4}, {"event": ["a", "c"], "mass": 0.3},
                  {"event": ["c", "a"], "mass": 0.3}],
        "Perm2": [{"event": ["b"], "mass": 0.4}, {"event": ["a", "c"], "mass": 0.1},
                  {"event": ["a", "b", "c"], "mass": 0.15}, {"event": ["b", "c", "a"], "mass": 0.35}],
    },
}


def _indefinite_doc():
    labels = ["a", "b", "c"]
    events = enumerate_pes(3)
    as_labels = lambda e: [labels[i - 1] for i in e]
    return {"frame": labels, "pmfs": {
        "A": [{"event": as_labels(e), "mass": 1 / 9} for e in events if len(e) != 2],
        "B": [{"event": as_labels(e), "mass": 1 / 6} for e in events if len(e) == 2],
    }}


@pytest.fixture
def doc_path(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(TWO_SOURCES), encoding="utf-8")
    return str(path)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_round_trip():
    doc = parse_document(TWO_SOURCES)
    again = loads(dumps(doc))
    assert again.pmfs == doc.pmfs and again.frame == doc.frame


def test_single_assignment_form():
    doc = parse_document({"frame": ["x", "y"], "name": "P", "assignments": [{"event": ["y", "x"], "mass": 1}]})
    assert doc["P"].masses == {(2, 1): 1.0}


@pytest.mark.parametrize("data,fragment", [
    ([], "document"),
    ({"pmfs": {}}, "frame"),
    ({"frame": ["a", "a"], "pmfs": {"P": []}}, "frame"),
    ({"frame": ["a"]}, "'pmfs' or 'assignments'"),
    ({"frame": ["a"], "pmfs": {"P": [{"event": ["z"], "mass": 1}]}}, "pmfs.P[0].event"),
    ({"frame": ["a"], "pmfs": {"P": [{"event": ["a"], "mass": "1"}]}}, "pmfs.P[0].mass"),
    ({"frame": ["a"], "pmfs": {"P": [{"event": ["a"], "mass": 0.5}]}}, "pmfs.P"),
    ({"frame": ["a", "b"], "pmfs": {"P": [{"event": ["a"], "mass": 0.5}, {"event": ["a"], "mass": 0.5}]}},
     "pmfs.P[1].event"),
])
def test_document_errors(data, fragment):
    with pytest.raises(DocumentError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_document(data)


def test_json_syntax_error_reports_position():
    with pytest.raises(DocumentError, match="line 1, column"):
        loads("{")


def test_dist_uncorrected_and_corrected(doc_path):
    code, text = run("dist", doc_path, "Perm1", "Perm2")
    assert code == 0 and json.loads(text)["value"] == pytest.approx(0.6305, abs=5e-4)
    code, text = run("dist", doc_path, "Perm1", "Perm2", "--universe", "full-pes")
    result = json.loads(text)
    assert code == 0 and result["corrected"] and result["value"] == pytest.approx(0.6292, abs=5e-4)
    assert result["universe_size"] == 15


def test_dist_csv_is_deterministic(doc_path):
    first = run("dist", doc_path, "Perm1", "Perm2", "--format", "csv")
    assert first == run("dist", doc_path, "Perm1", "Perm2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(first[1])))
    assert float(rows[0]["value"]) == pytest.approx(0.6305, abs=5e-4)
    assert rows[0]["corrected"] == "false" and rows[0]["universe_size"] == "6"


def test_dist_bayesian(tmp_path):
    path = tmp_path / "b.json"
    path.write_text(json.dumps({"frame": ["a", "b", "c"], "pmfs": {
        "P": [{"event": ["a"], "mass": 0.25}, {"event": ["b"], "mass": 0.5}, {"event": ["c"], "mass": 0.25}],
        "Q": [{"event": [x], "mass": 1 / 3} for x in "abc"]}}))
    code, text = run("dist", str(path), "P", "Q", "--measure", "chen")
    assert code == 0 and json.loads(text)["value"] == pytest.approx(0.1443, abs=5e-4)


def test_exit_codes(tmp_path, doc_path):
    assert run("dist", doc_path, "Perm1", "Missing")[0] == 2
    assert run("dist", str(tmp_path / "absent.json"), "a", "b")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("dist", str(bad), "a", "b")[0] == 2
    indefinite = tmp_path / "indef.json"
    indefinite.write_text(json.dumps(_indefinite_doc()))
    assert run("dist", str(indefinite), "A", "B", "--correction", "never")[0] == 3
    assert run("dist", str(indefinite), "A", "B")[0] == 0
    with pytest.raises(SystemExit) as exc:
        run("dist", doc_path, "Perm1", "Perm2", "--orn", "1.5")
    assert exc.value.code == 2


def test_weights():
    code, text = run("weights", "--n", "4", "--orn", "0.7")
    assert code == 0
    assert text == "weights: 0.461371 0.275618 0.164651 0.098360\norness: 0.700000\n"
    code, text = run("weights", "--n", "3", "--orn", "0.2", "--format", "json")
    assert json.loads(text)["orness"] == pytest.approx(0.2, abs=1e-9)


def test_matrix_full_pes(tmp_path, capsys):
    out_file = tmp_path / "m.csv"
    code, text = run("matrix", "--full-pes", "3", "--out", str(out_file))
    assert code == 0
    lam = float(text.splitlines()[0].split(": ")[1])
    assert lam == pytest.approx(-0.0167, abs=5e-4)
    rows = list(csv.reader(out_file.open(encoding="utf-8")))
    assert len(rows) == 16 and all(len(r) == 16 for r in rows)
    assert rows[0][1] == "(τ₁)"


def test_matrix_single_element_and_document(doc_path, capsys):
    code, text = run("matrix", "--full-pes", "1")
    assert code == 0 and text == ",(τ₁)\n(τ₁),1.000000\n"
    assert "lambda_min: 1.000000" in capsys.readouterr().err
    code, text = run("matrix", "--input", doc_path, "--kind", "rd")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 7 and rows[0][1] == "(a)"


def test_matrix_size_guard():
    assert run("matrix", "--full-pes", "7")[0] == 2
    assert run("matrix", "--full-pes", "8", "--allow-large")[0] == 2


def test_reproduce_subset(tmp_path):
    code, text = run("reproduce", "--tables", "table6,example5.2", "--out", str(tmp_path))
    assert code == 0 and text.count("PASS") == 2
    assert (tmp_path / "table6.csv").exists()
    assert run("reproduce", "--tables", "table99")[0] == 2
