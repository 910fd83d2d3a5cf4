import io
import json
import subprocess
import sys


from treehopf.cli import main
from treehopf.serialize import parse_lincomb
from treehopf.verify import IDENTITIES, run_identity


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_trees(capsys):
    code, out, err = run(capsys, "enumerate", "trees", "3")
    assert code == 0
    assert out.splitlines() == ["[[[[]]]]", "[[[][]]]", "[[][[]]]", "[[][][]]"]
    assert "4 trees" in err
    assert len(run(capsys, "enumerate", "trees", "4")[1].splitlines()) == 9


def test_enumerate_forests_json(capsys):
    code, out, _ = run(capsys, "enumerate", "forests", "0")
    assert out.strip() == "1"
    code, out, _ = run(capsys, "enumerate", "forests", "3", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 4 and len(data["items"]) == 4


def test_enumerate_bound(capsys):
    code, _, err = run(capsys, "enumerate", "trees", "9")
    assert code == 3 and "--force" in err
    assert run(capsys, "enumerate", "forests", "8", "--force")[0] == 0


def test_apply_examples(capsys):
    assert run(capsys, "apply", "grow", "[]")[1].strip() == "[[]]"
    code, out, _ = run(capsys, "apply", "glprod", "[[][]]", "[[]]")
    assert out.strip() == "[[[][]]] + 2*[[][[]]] + [[][][]]"
    code, out, _ = run(capsys, "apply", "coproduct", "[[]]", "--format", "json")
    assert len(json.loads(out)["result"]) == 3
    assert run(capsys, "apply", "chi", "[[][]]")[1].strip() == "2*Z([] [])"
    assert run(capsys, "apply", "P", "[]")[1].strip() == "1"
    assert run(capsys, "apply", "glcop", "[[]]")[1].strip() == "[] ⊗ [[]] + [[]] ⊗ []"
    assert run(capsys, "apply", "coproduct-cuts", "[[][]]")[1].count("⊗") == 4


def test_apply_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("[[][]]\n[[]]\n"))
    assert run(capsys, "apply", "glprod", "-")[1].strip() == "[[[][]]] + 2*[[][[]]] + [[][][]]"
    monkeypatch.setattr(sys, "stdin", io.StringIO("2*[[]]\n"))
    assert run(capsys, "apply", "prune", "-")[1].strip() == "2*[]"


def test_apply_errors(capsys):
    code, _, err = run(capsys, "apply", "grow", "[[]")
    assert code == 2 and "byte offset 0" in err
    code, _, err = run(capsys, "apply", "glprod", "[]")
    assert code == 2 and "expected 2" in err
    assert run(capsys, "apply", "frobnicate", "[]")[0] == 2


def test_tables(capsys):
    out = run(capsys, "table", "tree-counts", "4")[1]
    assert [int(line.split()[1]) for line in out.splitlines()] == [1, 1, 2, 4, 9]
    out = run(capsys, "table", "cm-weights", "4", "--format", "json")[1]
    assert [r["total"] for r in json.loads(out)["rows"]] == [1, 1, 2, 6, 24]
    out = run(capsys, "table", "labelling-counts", "3", "--format", "json")[1]
    assert json.loads(out)["rows"][3]["total"] == 12
    out = run(capsys, "table", "eigen", "4", "--format", "json")[1]
    assert all(r["matches"] for r in json.loads(out)["rows"])
    out = run(capsys, "table", "involution-sums", "4")[1]
    assert "differ" not in out


def test_verify_passing_identity(capsys):
    code, out, _ = run(capsys, "verify", "commutator", "--max-degree", "6")
    report = json.loads(out)["reports"][0]
    assert code == 0 and report["failed"] == 0 and report["checked"] == 37
    assert "wall_time" not in report
    code, out, _ = run(capsys, "verify", "pn-spectrum", "--max-degree", "5", "--timing")
    assert code == 0 and "wall_time" in json.loads(out)["reports"][0]


def test_verify_all_at_degree_five(capsys):
    code, out, _ = run(capsys, "verify", "all", "--max-degree", "5")
    data = json.loads(out)
    assert code == 0 and data["failed_identities"] == 0 and data["identities"] == len(IDENTITIES)


def test_verify_failure_is_replayable(capsys):
    code, out, _ = run(capsys, "verify", "involution-sum", "--max-degree", "6")
    assert code == 1
    failure = json.loads(out)["reports"][0]["failures"][0]
    assert failure == {"input": ["5"], "lhs": "450", "rhs": "426"}


def test_verify_counterexample_inputs_parse():
    # every input recorded for a tree identity is accepted by apply
    report = run_identity("symmetry-relation", 3)
    assert report.ok
    from treehopf import verify
    for inputs, _, _ in verify.IDENTITIES["symmetry-relation"].cases(3):
        for text in inputs:
            parse_lincomb(text)


def test_verify_usage_errors(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "commutator" in err
    assert run(capsys, "verify", "all", "--max-degree", "9")[0] == 3
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and len(out.splitlines()) == len(IDENTITIES)


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "treehopf", "verify", "all", "--max-degree", "4"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
