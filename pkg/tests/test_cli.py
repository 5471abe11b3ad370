import json

import numpy as np
import pytest

from zbrng.cli import main
from zbrng.hadamard import hadamard_from_text
from zbrng.rng_core import ring_from_text
from zbrng.spectra import smatrix_from_text

NONASSOC = ("zbrng 1\nn 3\ninvolution 0 1 2\n"
            "N 0\n0 1 0\n1 0 0\n0 0 1\n"
            "N 1\n1 0 0\n0 0 1\n0 1 0\n"
            "N 2\n0 0 1\n0 1 0\n2 0 0\n")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def z3_file(tmp_path, capsys):
    smat = tmp_path / "g3.smat"
    ring = tmp_path / "z3.zbrng"
    assert main(["gen", "group", "3", "-o", str(smat)]) == 0
    assert main(["verlinde", str(smat), "-o", str(ring)]) == 0
    capsys.readouterr()
    return smat, ring


@pytest.fixture
def paley12_file(tmp_path, capsys):
    path = tmp_path / "p12.had"
    assert main(["gen", "paley", "11", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_verify_pass(z3_file, capsys):
    code, out, _ = run(capsys, "verify", str(z3_file[1]))
    assert code == 0
    assert "duality" in out and "FAIL" not in out


def test_verify_machine(z3_file, capsys):
    code, out, _ = run(capsys, "verify", str(z3_file[1]), "--machine")
    assert code == 0
    data = json.loads(out)
    assert all(v["pass"] for v in data.values())


def test_verify_fail_exit1(tmp_path, capsys):
    # Z/3 table with the wrong involution: duality fails
    bad = tmp_path / "bad.zbrng"
    bad.write_text("zbrng 1\nn 3\ninvolution 0 1 2\n"
                   "N 0\n1 0 0\n0 1 0\n0 0 1\n"
                   "N 1\n0 1 0\n0 0 1\n1 0 0\n"
                   "N 2\n0 0 1\n1 0 0\n0 1 0\n")
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1 and "FAIL" in out


def test_identity(z3_file, capsys):
    code, out, _ = run(capsys, "identity", str(z3_file[1]))
    assert code == 0 and out.strip() == "identity 1 0 0"


def test_smatrix_roundtrip(z3_file, capsys):
    code, out, _ = run(capsys, "smatrix", str(z3_file[1]))
    assert code == 0
    s = smatrix_from_text(out)
    assert s.n == 3


def test_smatrix_nonassoc_witness(tmp_path, capsys):
    f = tmp_path / "na.zbrng"
    f.write_text(NONASSOC)
    code, out, _ = run(capsys, "smatrix", str(f))
    assert code == 1
    assert "associativity fails at" in out


def test_verlinde_emits_ring(z3_file, capsys):
    code, out, _ = run(capsys, "verlinde", str(z3_file[0]))
    assert code == 0
    ring = ring_from_text(out)
    assert ring.n == 3


def test_closed(z3_file, capsys):
    code, out, _ = run(capsys, "closed", str(z3_file[0]))
    assert code == 0
    assert out.splitlines() == ["0", "0 1 2"]


def test_closed_machine(z3_file, capsys):
    code, out, _ = run(capsys, "closed", str(z3_file[0]), "--machine")
    assert code == 0 and json.loads(out) == [[0], [0, 1, 2]]


def test_subring(tmp_path, capsys):
    f = tmp_path / "g4.smat"
    assert main(["gen", "group", "4", "-o", str(f)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "subring", str(f), "0", "2")
    assert code == 0 and smatrix_from_text(out).n == 2
    code, _, err = run(capsys, "subring", str(f), "0", "1")
    assert code == 1 and "not closed" in err


def test_quotient2(tmp_path, capsys):
    smat = tmp_path / "g6.smat"
    ring = tmp_path / "z6.zbrng"
    assert main(["gen", "group", "2", "3", "-o", str(smat)]) == 0
    assert main(["verlinde", str(smat), "-o", str(ring)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "quotient2", str(ring), "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "zbrng 1" and lines[1] == "n 3"
    assert sum(ln.startswith("class ") for ln in lines) == 6
    code, _, err = run(capsys, "quotient2", str(ring), "1")
    assert code == 1 and "not of order 2" in err
    code, _, err = run(capsys, "quotient2", str(ring), "99")
    assert code == 1 and "out of range" in err


def test_lift(z3_file, capsys):
    code, out, _ = run(capsys, "lift", str(z3_file[0]))
    assert code == 0
    assert out.splitlines()[0] == "zbrng 1"
    code, _, err = run(capsys, "lift", str(z3_file[0]), "--cap", "2")
    assert code == 1 and "exceeds cap" in err


def test_had_ring_parity(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "ring", str(paley12_file),
                       "--check-parity")
    assert code == 0 and out.strip() == "parity ok"


def test_had_ring_roundtrip(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "ring", str(paley12_file))
    assert code == 0
    ring = ring_from_text(out)
    assert ring.n == 12


def test_had_profile(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "profile", str(paley12_file))
    assert code == 0
    assert out.splitlines() == ["4 495", "total 495"]


def test_had_census(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "census", str(paley12_file))
    assert code == 0
    assert out.splitlines() == ["1 1 1 1 1 1 1 1 1", "count 1 bound 1"]


def test_had_closed(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "closed", str(paley12_file))
    assert code == 0
    assert len(out.splitlines()) == 13


def test_had_wmatrix(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "wmatrix", str(paley12_file), "2")
    assert code == 0
    W = hadamard_from_text(out)
    assert W.shape == (20, 20)


def test_had_reconstruct(paley12_file, tmp_path, capsys):
    ring = tmp_path / "p12.zbrng"
    assert main(["had", "ring", str(paley12_file), "-o", str(ring)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "had", "reconstruct", str(ring))
    assert code == 0
    got = sorted(map(tuple, hadamard_from_text(out).tolist()))
    want = sorted(map(tuple,
                      hadamard_from_text(paley12_file.read_text()).tolist()))
    assert got == want


def test_had_reconstruct3(tmp_path, capsys):
    had = tmp_path / "s16.had"
    ring = tmp_path / "s16.zbrng"
    assert main(["gen", "sylvester", "4", "-o", str(had)]) == 0
    assert main(["had", "ring", str(had), "-o", str(ring)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "had", "reconstruct3", str(ring))
    assert code == 0
    got = hadamard_from_text(out)
    assert got.shape == (16, 16)


def test_had_f2(capsys):
    code, out, _ = run(capsys, "had", "f2", "3")
    assert code == 0 and out.strip() == "f2 ok"


def test_had_vrank(paley12_file, capsys):
    code, out, _ = run(capsys, "had", "vrank", str(paley12_file))
    assert code == 0 and out.strip() == "10"


def test_had_equiv(paley12_file, tmp_path, capsys):
    other = tmp_path / "p12b.had"
    a = hadamard_from_text(paley12_file.read_text())
    other.write_text("\n".join(
        "".join("+" if x == 1 else "-" for x in row)
        for row in a[::-1].tolist()) + "\n")
    code, out, _ = run(capsys, "had", "equiv", str(paley12_file), str(other))
    assert code == 0 and out.strip() == "indistinguishable"


def test_gen_outputs_reload(tmp_path, capsys):
    for argv, n in ((["gen", "sylvester", "3"], 8),
                    (["gen", "paley", "7"], 8)):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert hadamard_from_text(out).shape == (n, n)
    code, out, _ = run(capsys, "gen", "kp", "3")
    assert code == 0 and smatrix_from_text(out).n == 4
    code, out, _ = run(capsys, "gen", "ds3")
    assert code == 0 and smatrix_from_text(out).n == 6


def test_gen_ext2_from_group(tmp_path, capsys):
    f = tmp_path / "g8.smat"
    assert main(["gen", "group", "2", "2", "2", "-o", str(f)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "gen", "ext2", str(f))
    assert code == 0 and smatrix_from_text(out).n == 28


def test_gen_kronecker_cli(paley12_file, tmp_path, capsys):
    f = tmp_path / "s4.had"
    assert main(["gen", "sylvester", "2", "-o", str(f)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "gen", "kronecker", str(f),
                       str(paley12_file))
    assert code == 0 and hadamard_from_text(out).shape == (48, 48)


def test_exit2_paths(tmp_path, capsys):
    bad = tmp_path / "bad.had"
    bad.write_text("garbage\n")
    assert run(capsys, "had", "ring", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "gen", "paley", "10")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_deterministic_output(paley12_file, capsys):
    a = run(capsys, "had", "profile", str(paley12_file))
    b = run(capsys, "had", "profile", str(paley12_file))
    assert a == b
