import json
import subprocess
import sys

import pytest

from rosekit.chain import complex_to_json
from rosekit.cli import run
from rosekit.grouppres import catalog, presentation_complex


@pytest.fixture
def files(tmp_path):
    torus = tmp_path / "torus.json"
    torus.write_text(json.dumps(complex_to_json(presentation_complex(catalog("torus")))))
    free2 = tmp_path / "free2.json"
    free2.write_text(json.dumps({"generators": 2, "relators": []}))
    return {"torus": str(torus), "free2": str(free2)}


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_homology_torus_mod2(files, capsys):
    code, out, _ = out_of(capsys, ["homology", "--complex", files["torus"], "--field", "p=2"])
    assert code == 0 and "betti = (1, 2, 1)" in out
    code, out, _ = out_of(capsys, ["homology", "--complex", files["torus"], "--field", "p=2", "--json"])
    assert json.loads(out)["betti"] == [1, 2, 1]


def test_gap_table_tsv(capsys):
    code, out, _ = out_of(capsys, ["gap-table", "--rmax", "2", "--kmax", "2", "--primes", "2,3"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].split("\t") == ["group", "r", "d", "field", "b1", "b2", "deficiency", "gap"]
    rows = {(l.split("\t")[0], l.split("\t")[3]): l.split("\t") for l in lines[1:]}
    assert rows[("Z_2 + Z_2", "F_3")][-1] == "1"
    assert rows[("Z_2 + Z_4", "Q")][6] == "-1"
    assert rows[("Z + Z", "Q")][-1] == "0"


def test_cover_theorem1(files, capsys):
    code, out, _ = out_of(capsys, ["cover", "--pres", files["free2"], "--epi", "Z2: a->1, b->0",
                                   "--check", "theorem1"])
    assert code == 0 and "petals m: 2 -> 3" in out
    code, out, _ = out_of(capsys, ["cover", "--pres", files["free2"], "--epi", "Z2: a->1, b->0",
                                   "--check", "theorem1", "--json"])
    data = json.loads(out)
    assert data["cover"]["petals"] == 3 and data["violations"] == []


def test_cover_deck(capsys):
    code, out, _ = out_of(capsys, ["cover", "--pres", "free:n=2", "--epi", "Z3: a->1", "--deck", "--json"])
    assert code == 0 and json.loads(out)["deck_h1"]["decomposition"] == [1, 0, 1]


def test_series(capsys):
    code, out, _ = out_of(capsys, ["series", "--pres", "free:n=2", "--p", "2", "--depth", "4", "--json"])
    assert [s["b1"] for s in json.loads(out)["stages"]] == [2, 3, 5, 9, 17]


def test_rose_check_and_carlsson(capsys):
    code, out, _ = out_of(capsys, ["rose-check", "--pres", "cyclic:m=6", "--p", "5", "--json"])
    assert json.loads(out)["is_acyclic"] is True
    code, out, _ = out_of(capsys, ["carlsson", "--pres", "free:n=2", "--epi", "Z2xZ2: a->(1,0), b->(0,1)"])
    assert code == 0 and "b_1(cover) = 5" in out


def test_ledger_and_screen(capsys):
    code, out, _ = out_of(capsys, ["ledger", "--pres", "abelian:r=0;d=2,2", "--fields", "Q",
                                   "--supplied-b2", "Q=0", "--json"])
    assert json.loads(out)["fields"][0]["gap_upper_bound"] == 1
    code, out, _ = out_of(capsys, ["screen", "--pres", "free:n=2", "--gamma", "Z^2", "--json"])
    assert code == 0 and json.loads(out)["fails"] is True


def test_modrep_and_catalog(capsys):
    code, out, _ = out_of(capsys, ["modrep-table", "--primes", "5", "--json"])
    rows = json.loads(out)
    assert rows[-1] == {"p": 5, "k": 5, "dims": [1, 0, 0, 0, 0, 0, 0]}
    code, out, _ = out_of(capsys, ["catalog", "swan:k=1", "--json"])
    assert json.loads(out)["generators"] == 2
    code, out, _ = out_of(capsys, ["catalog"])
    assert "swan" in out.split()


def test_presentation_kernel(capsys):
    code, out, _ = out_of(capsys, ["presentation", "--pres", "free:n=2", "--kernel", "Z2: a->1", "--json"])
    assert json.loads(out)["presentation"]["generators"] == 3


@pytest.mark.parametrize("argv, needle", [
    (["homology", "--pres", "torus", "--field", "p=4"], "not prime"),
    (["homology", "--complex", '{"dims": '], "malformed JSON"),
    (["cover", "--pres", "torus", "--epi", "Z3: a->0, b->0"], "surjective"),
    (["cover", "--pres", "cyclic:m=3", "--epi", "Z2: a->1"], "identity"),
    (["series", "--pres", "free:n=2", "--p", "Q"], "prime"),
])
def test_input_errors_exit_2(argv, needle, capsys):
    code, out, err = out_of(capsys, argv)
    assert code == 2 and needle in err and out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        outs.append(out_of(capsys, ["gap-table", "--rmax", "1", "--kmax", "2", "--primes", "2,3,5", "--json"])[1])
    assert outs[0] == outs[1]


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("ROSEKIT_THREADS", "1")
    one = out_of(capsys, ["gap-table", "--rmax", "1", "--kmax", "1"])[1]
    monkeypatch.setenv("ROSEKIT_THREADS", "4")
    four = out_of(capsys, ["gap-table", "--rmax", "1", "--kmax", "1"])[1]
    assert one == four
    monkeypatch.setenv("ROSEKIT_THREADS", "many")
    assert out_of(capsys, ["gap-table"])[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rosekit", "rose-check", "--pres", "free:n=3", "--p", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "rose with 3 petals" in res.stdout


def test_violation_exits_1(monkeypatch, capsys):
    from rosekit import roselab

    real = roselab.verify_theorem1

    def broken(spec, p):
        rep = real(spec, p)
        rep.violations.append("injected")
        return rep

    monkeypatch.setattr(roselab, "verify_theorem1", broken)
    code, out, err = out_of(capsys, ["cover", "--pres", "free:n=2", "--epi", "Z2: a->1", "--check", "theorem1"])
    assert code == 1 and "injected" in err and "VIOLATION" in out
