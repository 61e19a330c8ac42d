import json
import subprocess
import sys

import numpy as np
import pytest

from photongate import gates, jsonio
from photongate.cli import main
from photongate.measure import tomography_report
from photongate.protocols import vaa_full_run


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def mat(name, m):
        return write(tmp_path / f"{name}.json", jsonio.matrix_to_json(m))

    def state(name, v):
        return write(tmp_path / f"{name}.json", jsonio.state_to_json(v))

    def setup(name, cfg):
        return write(tmp_path / f"{name}.json", jsonio.setup_to_json(cfg))

    return mat, state, setup


def test_compile_identity_with_check(capsys, files):
    mat, _, _ = files
    code, out, _ = run(capsys, "compile", mat("id", np.eye(4)), "--check")
    doc = json.loads(out)
    assert code == 0
    assert doc["check"]["dist_exact"] < 1e-12 and doc["check"]["passed"]
    from photongate.assembly import assemble_two_qubit

    cfg = jsonio.setup_from_json(doc["setup"])
    assert np.allclose(assemble_two_qubit(cfg), np.eye(4), atol=1e-12)


def test_compile_walsh_hadamard_to_file(capsys, files, tmp_path):
    mat, _, _ = files
    out_path = tmp_path / "wh_setup.json"
    code, out, _ = run(capsys, "compile", mat("wh", gates.gate("walsh_hadamard")), "--check", "--output", str(out_path))
    assert code == 0
    assert json.loads(out)["check"]["passed"]
    from photongate.assembly import assemble_two_qubit

    cfg = jsonio.setup_from_json(jsonio.load(out_path))
    assert np.linalg.norm(assemble_two_qubit(cfg) - gates.gate("walsh_hadamard")) < 1e-8


def test_compile_plain_output_is_setup(capsys, files):
    mat, _, _ = files
    code, out, _ = run(capsys, "compile", mat("sw", gates.gate("swap")))
    assert code == 0
    jsonio.setup_from_json(json.loads(out))


def test_compile_error_codes(capsys, files, tmp_path):
    mat, _, _ = files
    code, _, err = run(capsys, "compile", mat("bad", np.diag([1, 1, 1, 2])))
    assert code == 3 and "not unitary" in err
    bad = tmp_path / "garbage.json"
    bad.write_text("[1, 2")
    assert run(capsys, "compile", str(bad))[0] == 2
    assert run(capsys, "compile", mat("small", np.eye(2)))[0] == 2
    assert run(capsys, "compile", str(tmp_path / "missing.json"))[0] == 2


def test_compile_accepts_slightly_non_unitary(capsys, files):
    mat, _, _ = files
    u = gates.gate("bell") + 1e-10 * np.eye(4)
    code, out, _ = run(capsys, "compile", mat("near", u), "--check")
    assert code == 0 and json.loads(out)["check"]["dist_exact"] < 1e-8


def test_gate_settings_and_matrix(capsys):
    code, out, _ = run(capsys, "gate", "--name", "bell", "--emit", "settings")
    assert code == 0
    assert jsonio.setup_from_json(json.loads(out)) == gates.settings("bell")
    code, out, _ = run(capsys, "gate", "--name", "grover-g3", "--emit", "matrix")
    assert np.array_equal(jsonio.matrix_from_json(json.loads(out)), np.diag([1, 1, -1, 1]))
    code, out, _ = run(capsys, "gate", "--name", "swap")
    assert np.allclose(jsonio.matrix_from_json(json.loads(out)), np.eye(4)[:, [0, 2, 1, 3]])


def test_gate_error_codes(capsys):
    assert run(capsys, "gate", "--name", "nope")[0] == 2
    assert run(capsys, "gate", "--name", "grover-g1", "--emit", "settings")[0] == 5


def test_simulate_examples(capsys, files):
    _, state, setup = files
    bell_setup = setup("bell", gates.settings("bell"))
    e4 = state("e4", gates.basis("bell")[3])
    code, out, _ = run(capsys, "simulate", "--setup", bell_setup, "--state", e4)
    probs = json.loads(out)["probabilities"]
    assert code == 0 and list(probs) == ["Rv", "Rh", "Lv", "Lh"]
    assert np.allclose(list(probs.values()), [0, 0, 0, 1], atol=1e-12)

    from photongate.assembly import SetupConfig

    code, out, _ = run(capsys, "simulate", "--setup", setup("id", SetupConfig()), "--state", state("rv", np.eye(4)[0]), "--shots", "10", "--seed", "1")
    assert json.loads(out)["counts"] == {"Rv": 10, "Rh": 0, "Lv": 0, "Lh": 0}

    code, out, _ = run(capsys, "simulate", "--setup", setup("vaa", gates.settings("vaa")), "--state", state("3p", np.eye(4)[0]))
    assert np.allclose(list(json.loads(out)["probabilities"].values()), [0.5, 0.5, 0, 0], atol=1e-12)


def test_simulate_rho_and_errors(capsys, files, tmp_path):
    mat, state, setup = files
    s = setup("id", gates.settings("tomo_3"))
    code, out, _ = run(capsys, "simulate", "--setup", s, "--rho", mat("mixed", np.eye(4) / 4))
    assert code == 0 and np.allclose(list(json.loads(out)["probabilities"].values()), 0.25)
    assert run(capsys, "simulate", "--setup", s)[0] == 2  # neither state nor rho
    assert run(capsys, "simulate", "--setup", s, "--rho", mat("m", np.eye(4) / 4), "--state", state("v", np.eye(4)[0]))[0] == 2
    assert run(capsys, "simulate", "--setup", s, "--state", state("v2", np.eye(4)[0]), "--shots", "5")[0] == 2  # no seed
    assert run(capsys, "simulate", "--setup", s, "--rho", mat("notrho", np.eye(4)))[0] == 3


def test_tomography(capsys, files):
    mat, _, _ = files
    code, out, _ = run(capsys, "tomography", "--rho", mat("mixed", np.eye(4) / 4))
    doc = json.loads(out)
    assert code == 0 and all(v == 0 for v in doc["coefficients"].values())
    rho_path = mat("bell", np.outer(gates.basis("bell")[3], gates.basis("bell")[3]))
    code, out, _ = run(capsys, "tomography", "--rho", rho_path, "--shots", "1000", "--seed", "8")
    rho = np.outer(gates.basis("bell")[3], gates.basis("bell")[3])
    assert out == jsonio.dumps(tomography_report(rho, 1000, 8)) + "\n"


def test_grover(capsys):
    code, out, _ = run(capsys, "grover", "--oracle", "2")
    assert code == 0 and out == "Rh\n"
    with pytest.raises(SystemExit) as exc:
        main(["grover", "--oracle", "7"])
    assert exc.value.code == 2


def test_vaa(capsys):
    code, out, _ = run(capsys, "vaa", "--measurement", "3", "--outcome", "+1")
    doc = json.loads(out)
    assert code == 0 and doc["detector"] in ("f1", "f2") and doc["consistent"]
    code, out, _ = run(capsys, "vaa", "--seed", "5")
    assert out == jsonio.dumps(vaa_full_run(5).to_json()) + "\n"
    assert run(capsys, "vaa")[0] == 2
    assert run(capsys, "vaa", "--measurement", "1")[0] == 2


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["grover", "--oracle", "1", "--verbose"])
    assert exc.value.code == 2


def test_module_entry_point_byte_identical(tmp_path):
    rho = tmp_path / "rho.json"
    rho.write_text(json.dumps(jsonio.matrix_to_json(np.eye(4) / 4)))
    argv = [sys.executable, "-m", "photongate", "tomography", "--rho", str(rho), "--shots", "500", "--seed", "3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
