import json
import subprocess
import sys
from pathlib import Path

import pytest

from egl import catalog
from egl.cli import main
from egl.engine import load_table, materialize
from egl.presentation import load_presentation

CAT = Path(catalog.catalog_dir())


def run(*args, cwd=None):
    proc = subprocess.run([sys.executable, "-m", "egl.cli", *args], capture_output=True, text=True, cwd=cwd)
    return proc.returncode, proc.stdout, proc.stderr


def test_analyze_q8_text(capsys):
    assert main(["analyze", str(CAT / "q8.grp")]) == 0
    out = capsys.readouterr().out
    assert "order            8" in out
    assert "E-group          false" in out
    assert "witness" in out


def test_analyze_d8_json(capsys):
    assert main(["analyze", str(CAT / "d8.grp"), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == 1
    assert rep["is_p_epsilon"]["holds"] is False
    assert "timing" not in rep


def test_analyze_e128_json_deterministic():
    code1, out1, _ = run("analyze", str(CAT / "e128_1.grp"), "--json", "--threads", "1")
    code2, out2, _ = run("analyze", str(CAT / "e128_1.grp"), "--json", "--threads", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["is_E"]["holds"] is True and rep["is_E"]["exhausted"] is True
    assert rep["aut"]["abelian"] is True and rep["aut"]["all_central"] is True
    assert rep["subgroup_orders"]["Z"] == rep["subgroup_orders"]["derived"] == 8


def test_witness_fields_reverify(capsys):
    assert main(["analyze", str(CAT / "q8.grp"), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    w = rep["is_E"]["witness"]
    from egl.presentation import eval_word, parse_word
    G = catalog.named("q8").group()
    A = dict(zip(G.symbols, G.generators))
    images = [eval_word(parse_word(w["gen_images"][s]), A, G) for s in G.symbols]
    from egl.morphisms import hom_from_images
    phi = hom_from_images(G, G, images)
    x = eval_word(parse_word(w["x"]), A, G)
    assert phi is not None
    assert G.comm(x, phi(x)) == eval_word(parse_word(w["commutator"]), A, G) != 0


def test_exit_code_syntax(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("group bad\ngen a\nrel b^2\n")
    assert main(["analyze", str(bad)]) == 1
    bad.write_text("gen a\nrel a^\n")
    code, _, err = run("analyze", str(bad))
    assert code == 1 and "line 2" in err


def test_exit_code_materialize(tmp_path):
    inf = tmp_path / "free.grp"
    inf.write_text("group t\ngen x\n")
    assert main(["analyze", str(inf), "--max-cosets", "300"]) == 2
    wrong = tmp_path / "wrong.grp"
    wrong.write_text("order 7\ngen x\nrel x^6\n")
    assert main(["analyze", str(wrong)]) == 2


def test_exit_code_budget(capsys):
    assert main(["analyze", str(CAT / "e128_1.grp"), "--json", "--budget", "500"]) == 3
    rep = json.loads(capsys.readouterr().out)
    assert rep["is_E"]["exhausted"] is False
    assert rep["budget"]["exhausted"] is False


def test_construct_faudree(tmp_path):
    out = tmp_path / "f3.grp"
    assert main(["construct", "faudree", "--p", "3", "--out", str(out)]) == 0
    assert materialize(load_presentation(out)).order == 6561


def test_construct_threegen_table(tmp_path):
    out = tmp_path / "tg.grp"
    code = main(["construct", "threegen", "--p", "3", "--r", "1", "--t", "1",
                 "--matrix", "1,0,0,0,1,0,0,0,1", "--out", str(out), "--table"])
    assert code == 0
    assert materialize(load_presentation(out)).order == 729
    assert load_table(out.with_suffix(".egl")).order == 729


def test_construct_bad_matrix(tmp_path):
    code = main(["construct", "threegen", "--p", "3", "--matrix", "3,0,0,0,1,0,0,0,1",
                 "--out", str(tmp_path / "x.grp")])
    assert code == 2


def test_construct_faudree2_verify(tmp_path):
    code, out, _ = run("construct", "faudree", "--p", "2", "--verify", "--json", "--fail-fast",
                       "--out", str(tmp_path / "f2.grp"))
    assert code == 0
    rep = json.loads(out)
    assert rep["is_E"]["holds"] is False
    w = rep["is_E"]["witness"]
    assert w["x"] == "a3"
    assert "a3" in w["violating_generators"]


def test_verify_subset_json():
    code, out, _ = run("verify", "core", "--only", "q8", "--only", "d8", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1
    assert [c["id"] for c in rep["claims"]] == ["q8.core", "d8.not_epsilon"]
    assert all(c["verdict"] == "pass" for c in rep["claims"])
    code2, out2, _ = run("verify", "core", "--only", "q8", "--only", "d8", "--json")
    assert out2 == out


def test_verify_text(capsys):
    assert main(["verify", "core", "--only", "lep5"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    for key in ("q8", "e128_3", "lep5_5", "faudree_3"):
        assert key in out


def test_console_script_registered():
    from importlib.metadata import entry_points
    eps = [e for e in entry_points(group="console_scripts") if e.name == "egl"]
    assert eps and eps[0].value == "egl.cli:main"


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["construct", "nonsense"])
    assert exc.value.code == 2
