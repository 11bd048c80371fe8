import json
import os
import subprocess
import sys

from cantorforge.cli import main
from cantorforge.document import build_document, dumps_canonical, export_dot
from cantorforge.genus_spec import parse_spec

SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")


def run_cli(*argv, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "cantorforge", *argv],
        capture_output=True,
        text=True,
        env=env,
    )


def test_build_document_counts(tmp_path):
    out = tmp_path / "doc.json"
    assert main(["build", "--spec", "2,3,inf", "--stages", "5", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [s["m"] for s in doc["stages"]] == [1, 1, 13, 13, 181]
    assert doc["spec"] == "2,3,inf;const:2"
    terms = {c["assigned_term"] for s in doc["stages"] for c in s["components"]}
    assert "inf" in terms and 2 in terms
    # exported counts satisfy the stage recurrence, straight off the document
    for prev, nxt in zip(doc["stages"], doc["stages"][1:]):
        assert prev["m"] == len(prev["components"])
        genus_sum = sum(c["genus"] for c in prev["components"])
        expected = prev["m"] if prev["stage"] % 2 == 1 else prev["m"] + 6 * genus_sum
        assert nxt["m"] == expected


def test_build_rejects_bad_spec():
    assert main(["build", "--spec", "1", "--stages", "3"]) == 2


def test_build_budget_exit_code():
    assert main(["build", "--spec", "2", "--stages", "5", "--budget", "10"]) == 3


def test_build_single_stage(capsys):
    assert main(["build", "--spec", "2", "--stages", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["stages"][0]["components"][0] == {
        "index": 1,
        "genus": 2,
        "birth": "seed",
        "parent_index": None,
        "cell_path": [],
        "diam_exp": 0,
        "assigned_term": 2,
    }


def test_document_round_trip_is_byte_identical(tmp_path):
    out = tmp_path / "doc.json"
    main(["build", "--spec", "2;cycle:3,inf", "--stages", "5", "--out", str(out)])
    raw = out.read_text()
    assert dumps_canonical(json.loads(raw)) == raw
    assert "Infinity" not in raw and "NaN" not in raw


def test_document_has_no_floats():
    doc = build_document(parse_spec("2,3,inf"), 5)

    def scan(value):
        assert not isinstance(value, float)
        if isinstance(value, dict):
            for v in value.values():
                scan(v)
        elif isinstance(value, list):
            for v in value:
                scan(v)

    scan(doc)


def test_verify_passes(capsys):
    assert main(["verify", "--spec", "2", "--stages", "7"]) == 0
    out = capsys.readouterr().out
    assert "oracle-diff" in out and "FAIL" not in out


def test_verify_corpus_passes():
    assert main(["verify", "--spec", "2,3", "--stages", "5", "--corpus", "5"]) == 0


def test_verify_fault_exits_one(monkeypatch, capsys):
    import cantorforge.cli as cli_mod
    from cantorforge.verify import CheckResult

    def rigged(spec, depth, budget=None):
        return [CheckResult("oracle-diff", False, "first diff at stage 2 index 0 field m")]

    monkeypatch.setattr(cli_mod, "run_suite", rigged)
    assert main(["verify", "--spec", "2", "--stages", "5"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "stage 2" in out


def test_ends_table(capsys):
    code = main(["ends", "--spec", "2,3,inf", "--labels", "1,2,3", "--depth", "9"])
    assert code == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if ln.startswith("follow-label")]
    assert len(lines) == 3
    assert "sup=2" in lines[0]
    assert "sup=3" in lines[1]
    assert "sup=5" in lines[2] and "inf" in lines[2]


def test_ends_chain_hop_row(capsys):
    code = main(
        ["ends", "--spec", "2", "--labels", "1", "--chain-hop", "first", "--depth", "7"]
    )
    assert code == 0
    out = capsys.readouterr().out
    hop_line = [ln for ln in out.splitlines() if ln.startswith("chain-hop")][0]
    assert "non_dense" in hop_line and "[1,2]" in hop_line


def test_ends_depth_one_still_classifies(capsys):
    assert main(["ends", "--spec", "2", "--labels", "1", "--depth", "1"]) == 0
    out = capsys.readouterr().out
    assert "dense" in out


def test_export_dot_counts(tmp_path):
    out = tmp_path / "tree.gv"
    assert main(["export", "--spec", "2", "--stages", "3", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count(" -> ") == 14
    assert text.count("[label=") == 15
    assert text.count("shape=box") == 12


def test_export_two_stages():
    text = export_dot(parse_spec("2"), 2)
    assert text.count(" -> ") == 1
    assert text.count("[label=") == 2


def test_export_highlight_marks_branch():
    text = export_dot(parse_spec("2"), 3, highlight_label=1)
    marked = [ln for ln in text.splitlines() if "color=red" in ln and "label=" in ln]
    assert [ln.split('"')[1] for ln in marked] == ["s1_1", "s2_1", "s3_1"]


def test_cli_determinism_across_processes(tmp_path):
    first = run_cli("build", "--spec", "2,3,inf", "--stages", "5")
    second = run_cli("build", "--spec", "2,3,inf", "--stages", "5")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout

    dot1 = run_cli("export", "--spec", "2,3", "--stages", "4", "--highlight-label", "2")
    dot2 = run_cli("export", "--spec", "2,3", "--stages", "4", "--highlight-label", "2")
    assert dot1.returncode == dot2.returncode == 0
    assert dot1.stdout == dot2.stdout


def test_cli_spec_error_via_subprocess():
    proc = run_cli("build", "--spec", "2,,3", "--stages", "2")
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_budget_env_var(tmp_path):
    proc = run_cli(
        "build", "--spec", "2", "--stages", "5", env_extra={"CANTORFORGE_BUDGET": "10"}
    )
    assert proc.returncode == 3


def test_kernel_env_fallback_matches_compiled():
    a = run_cli("build", "--spec", "2,3", "--stages", "5")
    b = run_cli(
        "build", "--spec", "2,3", "--stages", "5", env_extra={"CANTORFORGE_KERNEL": "python"}
    )
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
