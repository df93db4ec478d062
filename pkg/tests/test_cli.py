import json
import subprocess
import sys

import pytest

from rrcodes.cli import main

F7 = '{"p":7,"m":1}'
NC_V = '{"a1":2,"a2":0,"a3":3,"a4":5}'
NC_FULL = '{"a1":2,"a2":1,"a3":3,"a4":5}'


def run(capsys, *argv):
    code = main(list(argv))
    doc = json.loads(capsys.readouterr().out)
    return code, doc


def test_ring_info_nc_v(capsys):
    code, doc = run(capsys, "ring-info", "--field-json", F7, "--alpha-json", NC_V)
    assert code == 0
    pl = doc["payload"]
    assert pl["context"]["case"] == "NC_V"
    assert pl["cube"] is False
    assert pl["nilpotency_index"] == pl["nilpotency_measured"] == 14
    assert doc["schema"] == "1" and doc["status"] == "ok"


def test_ring_info_cube(capsys):
    code, doc = run(capsys, "--field-json", F7, "--alpha-json", '{"a1":1}', "ring-info")
    assert code == 0
    comps = doc["payload"]["crt_components"]
    assert [c["length"] for c in comps] == [7, 7, 7]


def test_ring_info_non_unit(capsys):
    code, doc = run(capsys, "ring-info", "--field-json", F7, "--alpha-json", '{"a2":1}')
    assert code == 2
    assert doc["payload"]["error"] == "NotAUnit"


def test_classify(capsys):
    code, doc = run(capsys, "classify", "--field-json", F7, "--alpha-json", NC_V,
                    "--spec-json", '{"kind":"B","ell":3}')
    assert code == 0
    d = doc["payload"]["descriptor"]
    assert d["dim_fp"] == 33 and d["eta"] == str(7**33)
    assert d["dual"]["verified"] is True
    code, doc = run(capsys, "classify", "--field-json", F7, "--alpha-json", NC_FULL,
                    "--spec-json", '{"kind":"C","ell":8,"t":1,"z":[[0,0,1]]}')
    assert code == 0 and doc["payload"]["descriptor"]["im"] == 7


def test_classify_mu_error(capsys):
    code, doc = run(capsys, "classify", "--field-json", F7, "--alpha-json", NC_V,
                    "--spec-json", '{"kind":"D","ell":5,"t":1,"mu":5}')
    assert code == 2 and doc["payload"]["error"] == "MuNotBelowIm"


def test_dual_flagged_branch_reports(capsys):
    code, doc = run(capsys, "dual", "--field-json", F7, "--alpha-json", NC_V, "--spec-json", '{"kind":"C","ell":2}')
    assert code == 0
    assert doc["diagnostics"][0]["type"] == "FormulaDiscrepancy"
    assert doc["payload"]["dual"]["source"] == "derived"


def test_enumerate(capsys):
    code, doc = run(capsys, "enumerate", "--field-json", F7, "--alpha-json", NC_V, "--limit", "1")
    assert code == 0 and doc["payload"]["specs"] == [{"kind": "A0", "ell": 0, "t": 0, "z": [], "mu": None}]


def test_gen_matrix(capsys, tmp_path):
    for spec, rows in (('{"kind":"B","ell":0}', 42), ('{"kind":"A0"}', 0), ('{"kind":"A1"}', 84)):
        out = tmp_path / "g.txt"
        code, doc = run(capsys, "gen-matrix", "--field-json", F7, "--alpha-json", NC_V,
                        "--spec-json", spec, "--out", str(out))
        assert code == 0 and doc["payload"]["dim"] == rows
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + rows


def test_gen_matrix_io_error(capsys, tmp_path):
    code, doc = run(capsys, "gen-matrix", "--field-json", F7, "--alpha-json", NC_V,
                    "--spec-json", '{"kind":"A1"}', "--out", str(tmp_path / "missing" / "g.txt"))
    assert code == 4


@pytest.mark.parametrize("argv", [
    ["ring-info", "--field-json", "{bad", "--alpha-json", NC_V],
    ["ring-info", "--field-json", '{"p":3}', "--alpha-json", NC_V],
    ["ring-info"],
    ["no-such-command"],
])
def test_invalid_input_exit_2(argv, capsys):
    assert main(argv) == 2


def test_verify_single_context(capsys):
    code, doc = run(capsys, "verify", "--field-json", '{"p":2,"m":2}', "--alpha-json",
                    '{"a1":[0,1],"a2":1,"a3":1}', "--suite", "nilpotency")
    assert code == 0
    chk = doc["payload"]["instances"][0]["checks"][0]
    assert chk["measured"] == 4 and chk["status"] == "pass"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rrcodes", "ring-info", "--field-json", F7, "--alpha-json", NC_V],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["payload"]["alpha0"] is not None
