import json

from hnnkit.cli import main

BROKEN = """
base {
  kind = abelian
  generators = a b c d
  relator c = ab
  relator c = ba
  relator d = cc
}
stable s {
  u = [a]
  v = [c]
}
"""


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_normalize_wise(capsys):
    rc, out, _ = run(capsys, "normalize", "--preset", "wise", "s'as")
    assert rc == 0
    assert out.splitlines()[0] == "d"


def test_normalize_identity(capsys):
    rc, out, _ = run(capsys, "normalize", "--preset", "wise", "")
    assert rc == 0
    assert out.splitlines()[0] == ""


def test_normalize_g2(capsys):
    rc, out, _ = run(capsys, "normalize", "--preset", "g2", "s'bbbs")
    assert rc == 0
    assert out.splitlines()[0] == "aba"


def test_normalize_parse_error(capsys):
    rc, _, err = run(capsys, "normalize", "--preset", "wise", "zzz")
    assert rc == 2
    assert "position" in err


def test_ball_csv(capsys):
    rc, out, _ = run(capsys, "ball", "--preset", "wise", "-N", "1", "--format", "csv")
    assert rc == 0
    rows = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert rows[0] == "key,distance,geodesic,count"
    assert len(rows) == 1 + 1 + 12


def test_ball_mem_cap_exit_code(capsys):
    rc, _, err = run(capsys, "ball", "--preset", "wise", "-N", "5", "--mem-cap", "100")
    assert rc == 2
    assert "resource error" in err


def test_ac_json(capsys):
    rc, out, _ = run(capsys, "ac", "--preset", "z2_ab", "-N", "4", "--format", "json",
                     "--fftp-k", "2")
    assert rc == 0
    doc = json.loads(out)
    assert doc["report"]["max_c"] == 2
    assert all(b["satisfied"] for b in doc["report"]["bounds"].values())


def test_fftp_exit_codes(capsys):
    rc, out, _ = run(capsys, "fftp", "--preset", "z2_ab", "--max-len", "4",
                     "--k-cap", "6", "--format", "json", "--jobs", "1")
    assert rc == 0
    doc = json.loads(out)
    assert doc["report"]["k_min"] == 2
    # an unverifiable cap turns into exit code 1
    rc, _, _ = run(capsys, "fftp", "--preset", "z2_ab", "--max-len", "3",
                   "--k-cap", "0", "--format", "json", "--jobs", "1")
    assert rc == 1


def test_fftp_sampled_mode(capsys):
    rc, out, _ = run(capsys, "fftp", "--preset", "z2_ab", "--max-len", "4",
                     "--k-cap", "6", "--mode", "sampled:100:7", "--format", "json",
                     "--jobs", "1")
    assert rc == 0
    doc = json.loads(out)
    assert doc["report"]["mode"] == "sampled"
    assert doc["report"]["seed"] == 7
    assert doc["report"]["total_words"] == 100


def test_verify_isometric_pass_and_fail(capsys, tmp_path):
    rc, out, _ = run(capsys, "verify-isometric", "--preset", "g2", "--max-len", "6")
    assert rc == 0
    assert "PASS" in out
    spec_path = tmp_path / "broken.hnn"
    spec_path.write_text(BROKEN)
    rc, out, _ = run(capsys, "verify-isometric", "--spec", str(spec_path),
                     "--max-len", "6")
    assert rc == 1
    assert "FAIL" in out


def test_signatures(capsys):
    rc, out, _ = run(capsys, "signatures", "--preset", "wise", "-N", "3")
    assert rc == 0
    assert "PASS" in out


def test_unknown_preset(capsys):
    rc, _, err = run(capsys, "normalize", "--preset", "bogus", "a")
    assert rc == 2
    assert "valid presets" in err


def test_mem_cap_env_var(capsys, monkeypatch):
    monkeypatch.setenv("HNNKIT_MEM_CAP", "100")
    rc, _, err = run(capsys, "ball", "--preset", "wise", "-N", "5")
    assert rc == 2
    assert "resource error" in err


def test_out_file(capsys, tmp_path):
    out_path = tmp_path / "ball.csv"
    rc, out, _ = run(capsys, "ball", "--preset", "z2_ab", "-N", "2",
                     "--format", "csv", "--out", str(out_path))
    assert rc == 0
    assert out == ""
    assert out_path.read_bytes().startswith(b"# hnnkit")
