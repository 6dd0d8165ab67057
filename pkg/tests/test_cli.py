import json
import subprocess
import sys

import pytest

from homnovikov import documents as docs
from homnovikov import exactlin as el
from homnovikov.cli import main

E1 = {
    "dim": 2, "parity": [0, 1],
    "mul": [{"i": 0, "j": 0, "k": 0, "c": "1"}, {"i": 0, "j": 1, "k": 1, "c": "1"},
            {"i": 1, "j": 0, "k": 1, "c": "1"}],
}
UNIT = {"dim": 1, "parity": [0], "mul": [{"i": 0, "j": 0, "k": 0, "c": "1"}]}
ZERO = {"dim": 1, "parity": [0], "mul": []}


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="doc.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_pass_and_fail(write, capsys):
    code, out, _ = run(capsys, "check", "hom-novikov", write(E1))
    assert code == 0 and "pass" in out
    flipped = dict(E1, alpha=[["1", "0"], ["0", "-1"]])
    code, out, _ = run(capsys, "check", "hom-novikov", write(flipped))
    assert code == 1 and "(0, 1, 0)" in out


def test_check_machine_output(write, capsys):
    code, out, _ = run(capsys, "check", "hom-lie", write(E1), "--machine")
    result = json.loads(out)
    assert code == 1 and result["ok"] is False


def test_derivation_check_needs_map(write, capsys):
    code, _, err = run(capsys, "check", "derivation", write(E1))
    assert code == 2 and "error:" in err
    code, _, _ = run(capsys, "check", "derivation", write(dict(E1, maps={"D": [[0, 0], [0, 1]]})))
    assert code == 0


def test_rota_baxter_weight_flag(write, capsys):
    path = write(dict(UNIT, maps={"P": [["-3"]]}))
    assert run(capsys, "check", "rota-baxter", path, "--weight", "3")[0] == 0
    assert run(capsys, "check", "rota-baxter", path, "--weight", "0")[0] == 1


def test_cohomology_output(write, capsys):
    code, out, _ = run(capsys, "cohomology", write(UNIT), "--parity", "even")
    assert code == 0 and out.startswith("H2(even)=0")
    _, out, _ = run(capsys, "cohomology", write(ZERO), "--parity", "even")
    assert out.startswith("H2(even)=1")
    _, out, _ = run(capsys, "cohomology", write({"dim": 0, "parity": [], "mul": []}), "--machine")
    assert json.loads(out) == [
        {"parity": "even", "C2": 0, "Z2": 0, "B2": 0, "H2": 0},
        {"parity": "odd", "C2": 0, "Z2": 0, "B2": 0, "H2": 0},
    ]


def test_cohomology_of_non_novikov_is_precondition_failure(write, capsys):
    code, out, err = run(capsys, "cohomology", write(dict(E1, alpha=[["1", "0"], ["0", "-1"]])))
    assert code == 1 and "failed predicate: is_hom_novikov" in out and "error:" in err


def test_construct_sub_adjacent_of_e1(write, capsys):
    code, out, _ = run(capsys, "construct", "sub-adjacent", write(E1))
    assert code == 0
    doc = docs.parse_algebra(out)
    assert el.is_zero(doc.algebra.mul) and doc.algebra.dim == 2


def test_yau_square_with_identity_is_unchanged(write, capsys):
    path = write(E1)
    _, out, _ = run(capsys, "construct", "yau-square", path)
    assert docs.same_document(docs.parse_algebra(out), docs.parse_algebra(json.dumps(E1)))


def test_construct_missing_map_is_input_error(write, capsys):
    code, out, err = run(capsys, "construct", "deriv-product", write(E1))
    assert code == 2 and out == "" and "D" in err


def test_construct_xi_family(write, capsys):
    path = write(dict(E1, maps={"D": [[0, 0], [0, 1]]}, xi="1/2"))
    code, out, _ = run(capsys, "construct", "xi-family", path)
    assert code == 0
    mul = docs.parse_algebra(out).algebra.mul
    assert mul[0, 1, 1] == el.mpq(3, 2)
    _, out, _ = run(capsys, "construct", "xi-family", path, "--xi", "0")
    assert docs.parse_algebra(out).algebra.mul[0, 0, 0] == 0


def test_bad_documents_exit_two(write, capsys):
    code, out, err = run(capsys, "check", "hom-novikov", write('{"dim": 1, "parity": [0], "mul": [{"i":0,"j":0,"k":0,"c":"1/0"}]}'))
    assert code == 2 and out == "" and "mul[0].c" in err
    assert run(capsys, "check", "hom-novikov", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_deform_commands(write, capsys):
    base = write(dict(E1, mul=[{"i": 0, "j": 1, "k": 1, "c": "1"}]), "base.json")
    g = write({"order": 1, "terms": [E1["mul"]]}, "g.json")
    code, out, _ = run(capsys, "deform", "check", base, g)
    assert code == 0 and "order 1: pass" in out
    assert run(capsys, "deform", "infinitesimal", base, g)[0] == 0
    bad = write({"order": 1, "terms": [[{"i": 1, "j": 0, "k": 1, "c": "1"}]]}, "bad.json")
    code, out, _ = run(capsys, "deform", "check", write(E1, "e1.json"), bad)
    assert code == 1 and "order 1: FAIL" in out
    assert run(capsys, "deform", "check", base, g, "--order", "2")[0] == 2


def test_deform_trivialize(write, capsys):
    unit = write(UNIT, "unit.json")
    g = write({"order": 1, "terms": [UNIT["mul"]]}, "g.json")
    code, out, err = run(capsys, "deform", "trivialize", unit, g)
    assert code == 0 and "yes" in err
    d = docs.parse_deformation(out)
    assert all(el.is_zero(t) for t in d.tensors(1))
    code, out, _ = run(capsys, "deform", "trivialize", write(ZERO, "zero.json"), g, "--machine")
    assert code == 1 and json.loads(out)["trivialized"] is False


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "3", "--count", "2", "--machine")
    assert code == 0
    assert all(json.loads(out)["results"].values())


def test_module_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "homnovikov", "check", "supercomm", write(E1)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "pass" in proc.stdout
