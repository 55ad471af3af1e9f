import json
import shutil
import subprocess
from pathlib import Path

import pytest

from gogkit.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example_lm_metadata(capsys):
    code, out, _ = run(capsys, "example", "lm", "--emit", "metadata")
    assert code == 0
    assert json.loads(out)["metadata"] == {"generators": 3, "relators": 3, "valence": 10}


def test_abelianize_inline(capsys):
    code, out, _ = run(capsys, "abelianize", "<a | a^2>")
    assert code == 0 and json.loads(out) == {"free_rank": 0, "torsion": [2]}


def test_verify_lambda22(capsys):
    code, out, _ = run(capsys, "verify", "paper", "--only", "lambda22")
    assert code == 0
    claim = json.loads(out)["claims"][0]
    assert claim["status"] == "pass" and claim["computed"]["index"] == 16


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "paper", "--only", "double_link")
    assert code == 3
    assert json.loads(out)["claims"][0]["status"] == "fail"


def test_input_error_exit_code(capsys):
    code, _, err = run(capsys, "abelianize", "<a | b>")
    assert code == 1 and err.startswith("error:")
    code, _, _ = run(capsys, "covolume", "no_such_graph")
    assert code == 1


def test_overflow_exit_code(capsys):
    code, out, _ = run(capsys, "coset-enum", "<a, b | >", "--max-cosets", "20")
    assert code == 2 and json.loads(out)["status"] == "overflowed"


def test_coset_enum_output(capsys, tmp_path):
    words = tmp_path / "sub.txt"
    words.write_text("b\n")
    code, out, _ = run(capsys, "coset-enum", "<a, b | a^2, b^3, (a b)^2>", "--subgroup", words, "--witnesses", "a,b")
    obj = json.loads(out)
    assert code == 0 and obj["index"] == 2
    assert obj["fingerprint"]["order"] == 2
    assert obj["witnesses"] == [{"word": "a", "nontrivial": True}, {"word": "b", "nontrivial": False}]


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("GOGKIT_BUDGET", "10")
    code, _, _ = run(capsys, "coset-enum", "<a, b | >")
    assert code == 2


COMMANDS = [
    ("fundamental-group", DATA / "lm.json"),
    ("covolume", DATA / "bk_gamma2.json"),
    ("covolume-sum", DATA / "covolume_entries.json"),
    ("valences", DATA / "single_edge.json"),
    ("check-unimodular", DATA / "bad_loop.json"),
    ("develop", DATA / "z2_free_product.json", "--radius", "3"),
    ("barycentric", DATA / "pentagon_cells.json"),
    ("spherical-sets", DATA / "pentagon_system.json"),
    ("check-t1", DATA / "pentagon_system.json", "--edge", "i1,i2"),
    ("check-t2", DATA / "pentagon_spec_lambda22.json", "--edge", "i1,i2"),
    ("chamber-ball", DATA / "pentagon_spec_lambda22.json", "--radius", "1"),
    ("thomas", DATA / "single_edge.json", "--building", DATA / "pentagon_spec_single_edge.json", "--edge", "i1,i2"),
    ("double", DATA / "path3.json", "--over", "a,c"),
    ("wedge", DATA / "path3.json", "--copies", "3"),
    ("example", "gamma_n", "--n", "4"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_deterministic_json(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out1


def test_specific_values(capsys):
    assert json.loads(run(capsys, "covolume", DATA / "bk_gamma2.json")[1]) == {"covolume": "1/4"}
    assert json.loads(run(capsys, "covolume-sum", DATA / "covolume_entries.json")[1])["value"] == "7/6"
    assert json.loads(run(capsys, "spherical-sets", DATA / "pentagon_system.json")[1])["count"] == 11
    assert json.loads(run(capsys, "barycentric", DATA / "pentagon_cells.json")[1])["counts"] == {
        "vertices": 11, "edges": 20, "composable": 10}
    obj = json.loads(run(capsys, "check-unimodular", DATA / "bad_loop.json")[1])
    assert obj["unimodular"] is False and obj["ratio"] == "1/2"


def test_thomas_emits_complex_and_presentation(capsys):
    code, out, _ = run(capsys, "thomas", "lm", "--building", DATA / "pentagon_spec_lambda22.json", "--edge", "i1,i2")
    obj = json.loads(out)
    assert code == 0
    assert len(obj["complex"]["vertices"]) == 8
    assert obj["presentation"].startswith("< a, b, x3, x4, x5, t |")


def test_dot_output(capsys):
    code, out, _ = run(capsys, "chamber-ball", DATA / "pentagon_spec_lambda22.json", "--radius", "1", "--format", "dot")
    assert code == 0 and out.startswith("graph C {")
    code, _, _ = run(capsys, "abelianize", "<a | a^2>", "--format", "dot")
    assert code == 1


@pytest.mark.skipif(shutil.which("gogkit") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["gogkit", "abelianize", "<a, b | a^2, b^4, [a,b]>"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["torsion"] == [2, 4]
