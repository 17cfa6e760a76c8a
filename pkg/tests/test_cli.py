import json
import shutil
import subprocess
from pathlib import Path

import pytest

from accat import io
from accat.cli import main
from accat.fincat import FinCat, are_isomorphic, arrow_category, chain_category

DATA = Path(__file__).resolve().parent.parent / "tutorials" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def built(out):
    return io.category_from_dict(json.loads(out)["category"])


def test_check_category(capsys):
    code, out, _ = run(capsys, "check", DATA / "arrow.json", "--acyclic")
    assert code == 0
    assert "acyclic: yes" in out


def test_check_fails_on_cycle(capsys):
    code, out, _ = run(capsys, "check", DATA / "walking_iso.json", "--acyclic")
    assert code == 1 and "acyclic: no" in out


def test_check_sieve_and_dwyer(capsys):
    assert run(capsys, "check", DATA / "a_in_arrow.json", "--dwyer")[0] == 0
    assert run(capsys, "check", DATA / "a_to_arrow_b.json", "--sieve")[0] == 1


def test_check_complex(capsys):
    code, out, _ = run(capsys, "check", DATA / "circle.json")
    assert code == 0 and "euler characteristic: 0" in out


def test_reflect_walking_iso(capsys):
    code, out, _ = run(capsys, "reflect", DATA / "walking_iso.json")
    assert code == 0 and are_isomorphic(built(out), FinCat("x"))


def test_quotient_and_coequalizer(capsys):
    code, out, _ = run(capsys, "quotient", DATA / "parallel.json", DATA / "glue_fg.json")
    assert code == 0 and are_isomorphic(built(out), arrow_category())
    code, out, _ = run(capsys, "coequalize", DATA / "arrow_in_parallel_f.json",
                       DATA / "arrow_in_parallel_g.json")
    assert code == 0 and are_isomorphic(built(out), arrow_category())


def test_coequalizing_arrow_ends_hits_the_cap(capsys):
    code, _, err = run(capsys, "--cap", 30, "coequalize", DATA / "a_in_arrow.json",
                       DATA / "a_to_arrow_b.json")
    assert code == 3 and err.startswith("resource cap:")


def test_pushout_and_colimits(capsys):
    code, out, _ = run(capsys, "pushout", DATA / "a_in_arrow.json", DATA / "a_to_point.json")
    assert code == 0 and are_isomorphic(built(out), arrow_category())
    for extra in ([], ["--filtered"]):
        code, out, _ = run(capsys, "colimit", DATA / "diagram.json", *extra)
        assert code == 0
        json.loads(out)


def test_nerve_sd_tau1(capsys):
    code, out, _ = run(capsys, "nerve", DATA / "arrow.json", "--max-dim", 1)
    assert code == 0 and json.loads(out)["max_dim"] == 1
    code, out, _ = run(capsys, "sd", DATA / "triangle.json")
    assert code == 0 and len(json.loads(out)["vertices"]) == 7
    code, out, _ = run(capsys, "tau1", DATA / "arrow.json")
    assert code == 0 and are_isomorphic(io.category_from_dict(json.loads(out)), arrow_category())


def test_generators(capsys):
    code, out, _ = run(capsys, "generators", "--set", "J", "--dim", 2, "--horn", 1)
    assert code == 0
    cod = io.category_from_dict(json.loads(out)["codomain"])
    # simplices of the subdivided 2-simplex: 7 + 12 + 6
    assert len(cod.objects) == 25
    assert run(capsys, "generators", "--set", "J", "--dim", 0)[0] == 2


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", DATA / "circle.json")
    assert code == 0 and "H_1 = Z" in out
    code, out, err = run(capsys, "homology", DATA / "arrow.json", "--via-nerve", "--max-dim", 3)
    assert code == 0 and "H_0 = Z" in out and err == ""


def test_lift_rlp_factorize(capsys):
    assert run(capsys, "lift", DATA / "square_lift.json")[0] == 0
    assert run(capsys, "rlp", DATA / "arrow_to_point.json", "--against", "I",
               "--max-dim", 1)[0] == 0
    assert run(capsys, "rlp", DATA / "two_points_to_point.json", "--against", "I",
               "--max-dim", 1)[0] == 1
    code, out, _ = run(capsys, "factorize", DATA / "two_points_to_point.json", "--against", "I",
                       "--max-dim", 1, "--max-stages", 2)
    assert code == 3 and "no convergence" in out


def test_smallness(capsys):
    code, out, _ = run(capsys, "smallness", DATA / "arrow.json", DATA / "chain.json")
    assert code == 0 and "bijective: yes" in out


def test_suite(capsys):
    code, out, _ = run(capsys, "suite", "--list")
    assert code == 0 and "pushsieve-acyclic" in out
    code, out, _ = run(capsys, "--seed", 3, "suite", "pushsieve-acyclic", "--count", 5)
    assert code == 0 and out.strip().splitlines()[-1].startswith("pushsieve-acyclic")
    assert run(capsys, "suite", "nonexistent")[0] == 2


def test_json_out(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", DATA / "arrow.json", "--json-out", report)
    data = json.loads(report.read_text())
    assert code == 0 and data["command"] == "check" and data["exit_code"] == 0
    assert data["acyclic"] is True


def test_invalid_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objects": ["a"], "morphisms": [{"name": "f", "src": "a", "tgt": "z"}]}')
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "check", tmp_path / "missing.json")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_console_script(tmp_path):
    exe = shutil.which("accat")
    if exe is None:
        pytest.skip("accat is not installed on PATH")
    path = tmp_path / "c.json"
    io.dump(io.category_to_dict(chain_category(3)), path)
    proc = subprocess.run([exe, "check", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "objects: 3" in proc.stdout
