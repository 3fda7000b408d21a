import json
import os
from importlib import resources

import pytest

from sdcodes.binary import BinaryCode
from sdcodes.cli import main
from sdcodes.component import load_code, save_code
from sdcodes.pipelines.setups import hamming8, qr_golay24

GOLAY_FILE = str(resources.files("sdcodes.data").joinpath("golay24.code"))


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit):
        main(["idempotents"])  # missing --group


def test_unknown_group(capsys):
    assert main(["idempotents", "--group", "nope"]) == 1
    assert "unknown group" in capsys.readouterr().err


def test_idempotents_table(capsys):
    assert main(["idempotents", "--group", "z3xz3"]) == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines() if ln.startswith("e")]
    assert len(lines) == 5


def test_mindist_golay(capsys):
    assert main(["mindist", GOLAY_FILE]) == 0
    assert "minimum weight 8" in capsys.readouterr().out


def test_mindist_missing_file(capsys):
    assert main(["mindist", "/nonexistent/path.code"]) == 1


def test_dual_roundtrip(tmp_path, capsys):
    src = tmp_path / "h8.code"
    dst = tmp_path / "d.code"
    save_code(hamming8(), src)
    assert main(["dual", str(src), "--out", str(dst)]) == 0
    assert load_code(dst) == hamming8()  # self-dual


def test_canon_writes_representative(tmp_path, capsys):
    a = tmp_path / "a.code"
    b = tmp_path / "b.code"
    ra = tmp_path / "ra.code"
    rb = tmp_path / "rb.code"
    code = BinaryCode(6, [0b110110, 0b011011])
    save_code(code, a)
    # a coordinate-permuted copy canonicalizes to the same representative
    perm = (5, 4, 3, 2, 1, 0)
    moved = BinaryCode(6, [sum(((r >> i) & 1) << perm[i] for i in range(6))
                           for r in code.rows])
    save_code(moved, b)
    assert main(["canon", str(a), "--out", str(ra)]) == 0
    assert "canonical key" in capsys.readouterr().out
    assert main(["canon", str(b), "--out", str(rb)]) == 0
    assert load_code(ra) == load_code(rb)


def test_orbit_and_aut(tmp_path, capsys):
    p = tmp_path / "h8.code"
    save_code(hamming8(), p)
    assert main(["aut", str(p)]) == 0
    assert "order: 1344" in capsys.readouterr().out
    assert main(["orbit", str(p), "--cap", "100"]) == 0
    assert "orbit size: 30" in capsys.readouterr().out


def test_decompose_golay(tmp_path, capsys):
    from sdcodes.pipelines.z3z3 import stage1_fixed_code

    code, _, _ = stage1_fixed_code()
    p = tmp_path / "g.code"
    save_code(code, p)
    rc = main(["decompose", "--group", "z3z3-24", "--outdir", str(tmp_path), str(p)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "C0" in out and "C1" in out
    c0 = load_code(tmp_path / "g-comp0.code")
    assert c0.dim == 4


def test_decompose_non_invariant(tmp_path, capsys):
    p = tmp_path / "g.code"
    save_code(qr_golay24(), p)
    rc = main(["decompose", "--group", "z3z3-24", "--outdir", str(tmp_path), str(p)])
    assert rc == 1


def test_verify_subcommand(capsys):
    assert main(["verify", "lemmaE"]) == 0
    out = capsys.readouterr().out
    assert "verdict: ok" in out


def test_pipeline_writes_manifest(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SDCODES_OUTDIR", str(tmp_path))
    rc = main(["pipeline", "z3z3", "--stage", "1"])
    assert rc == 0
    man = tmp_path / "z3z3-manifest.jsonl"
    recs = [json.loads(ln) for ln in man.read_text().splitlines()]
    assert recs[0]["record"] == "header"
    assert recs[-1]["record"] == "verdict"
