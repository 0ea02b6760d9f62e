import json

import pytest

from k3fib.cli import main


@pytest.fixture
def run(capsys):
    def _run(*args):
        with pytest.raises(SystemExit) as ex:
            main(list(args))
        out = capsys.readouterr()
        return ex.value.code, out.out, out.err
    return _run


def test_no_arguments_exit_2(run):
    code, _, err = run()
    assert code == 2 and "Usage" in err


def test_empty_config_exit_2(run, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{}")
    assert run("run", str(cfg))[0] == 2


def test_config_file_matches_flags(run, tmp_path):
    cfg = tmp_path / "c.json"
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    cfg.write_text(json.dumps({"command": ["count", "elliptic"], "options": {"a": "0,0,0,1,1", "p": 7},
                               "seed": 3, "output": str(out1)}))
    assert run("run", str(cfg))[0] == 0
    assert run("--seed", "3", "count", "elliptic", "--a", "0,0,0,1,1", "--p", "7", "--json", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert json.loads(out1.read_text())["seed"] == 3


def test_verify_legendre(run):
    code, out, _ = run("casebook", "verify", "legendre_to_kummer")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert data["report"]["final_equation"] == "y^2 = w*(w - 1)*(w - t2)*u*(u - 1)*(u - t1)"


def test_verify_unknown_case(run):
    assert run("casebook", "verify", "nope")[0] == 2


def test_lookup_mw_z6(run):
    code, out, _ = run("fibration", "lookup", "I1,I2,I3,I6")
    assert code == 0 and json.loads(out)["rows"][0]["mw"] == "Z/6Z"


def test_lookup_missing_row_exit_2(run):
    assert run("fibration", "lookup", "I1,I1")[0] == 2


def test_shioda_tate_and_euler(run):
    code, out, _ = run("fibration", "shioda-tate", "I0*,I0*,I0*,I0*", "--torsion", "4")
    data = json.loads(out)
    assert (data["rho"], data["ns_disc"]) == (18, "-16")
    code, out, _ = run("fibration", "euler", "II*,II*,I1,I1,I1,I1")
    assert json.loads(out)["euler"] == 24


def test_lattice_commands(run):
    code, out, _ = run("lattice", "invariants", "D9+E7+U")
    assert code == 0 and json.loads(out)["invariants"]["disc"] == -8
    code, out, _ = run("lattice", "embed", "U+E8+E7+A1")
    assert code == 0 and json.loads(out)["chain"]["discs"][-1] == -1
    assert run("lattice", "invariants", "NotALattice")[0] == 2
    assert run("lattice", "drop-p", "U+E8", "--p", "3")[0] == 2


def test_count_surface_and_compare(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["--p", "101", "--t1", "3", "--t2", "5", "--mode", "smooth"]
    assert run("count", "surface", "--model", "z2:legendre", *args, "--json", str(a))[0] == 0
    assert run("count", "surface", "--model", "kummer", *args, "--json", str(b))[0] == 0
    code, out, _ = run("count", "compare", str(a), str(b))
    assert code == 0 and json.loads(out)["verdict"]["verdict"] == "equal"


def test_emit_then_count(run, tmp_path):
    m = tmp_path / "m.json"
    assert run("casebook", "emit", "III*", "--json", str(m))[0] == 0
    code, out, _ = run("count", "surface", "--model", str(m), "--p", "31")
    assert code == 0 and json.loads(out)["report"]["total"] % 31 == 1


def test_count_hypersurface(run):
    code, out, _ = run("count", "hypersurface", "--poly", "x", "--p", "5", "--vars", "x,y")
    assert code == 0 and json.loads(out)["report"]["total"] == 5


def test_singular_curve_exit_2(run):
    assert run("count", "elliptic", "--a", "0,0,0,0,0", "--p", "5")[0] == 2


def test_threefold_command(run):
    code, out, _ = run("count", "threefold")
    assert code == 0 and json.loads(out)["report"]["ok"]


def test_deterministic_output(run):
    first = run("casebook", "verify", "IIstar")[1]
    assert first == run("casebook", "verify", "IIstar")[1]
