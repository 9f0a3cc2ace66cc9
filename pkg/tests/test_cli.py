import json

from hbspace.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_named_space_at_origin_column(tmp_path, capsys):
    code, out, _ = run(["kernel", "--named", "h2",
                        "--pairs", "0.3:0;0.5:0;0.1+0.2i:0"], capsys)
    assert code == 0
    for line in out.strip().splitlines():
        assert line.endswith("= 1+0j")


def test_kernel_reference_value(capsys):
    code, out, _ = run(["kernel", "--named", "rank1-half", "--pairs", "0.5:0.5"], capsys)
    assert code == 0
    assert "1.16666666667" in out


def test_kernel_csv_deterministic(tmp_path, capsys):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    for d in (d1, d2):
        code, _, _ = run(["kernel", "--named", "rank1-half", "--seed", "42",
                          "--out", str(d)], capsys)
        assert code == 0
    assert (d1 / "kernel.csv").read_bytes() == (d2 / "kernel.csv").read_bytes()
    assert (d1 / "kernel.svg").exists()


def test_csv_header_carries_version(tmp_path, capsys):
    code, _, _ = run(["kernel", "--named", "h2", "--out", str(tmp_path)], capsys)
    assert code == 0
    lines = (tmp_path / "kernel.csv").read_text().splitlines()
    assert lines[0].startswith("# hbspace")
    assert "version=" in lines[0]
    assert lines[1] == "z,lam,k"


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["kernel", "--space", str(bad)], capsys)
    assert code == 2
    assert "configuration error" in err


def test_unknown_named_space_exits_2(capsys):
    code, _, err = run(["kernel", "--named", "nope"], capsys)
    assert code == 2


def test_contraction_violation_exits_1(tmp_path, capsys):
    definition = tmp_path / "space.json"
    definition.write_text(json.dumps({"kind": "explicit", "components": [[0.0, 1.2]]}))
    code, _, err = run(["verify", "--space", str(definition)], capsys)
    assert code == 1
    assert "invariant failure" in err


def test_missing_space_exits_2(capsys):
    code, _, err = run(["norm", "--coeffs", "1,2"], capsys)
    assert code == 2


def test_norm_subcommand(capsys):
    code, out, _ = run(["norm", "--named", "rank1-half", "--coeffs", "0,1"], capsys)
    assert code == 0
    assert "member: True" in out
    assert "1.41421356237" in out


def test_embed_subcommand(tmp_path, capsys):
    code, out, _ = run(["embed", "--named", "rank1-half", "--coeffs", "0,1",
                        "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "residual" in out
    assert (tmp_path / "embed.csv").exists()


def test_norm_formula_subcommand(tmp_path, capsys):
    code, out, _ = run(["norm-formula", "--named", "rank1-half", "--coeffs", "0,1",
                        "--quick", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "direct norm^2: 2" in out
    assert (tmp_path / "norm_formula.csv").exists()
    assert (tmp_path / "norm_formula.svg").exists()


def test_carleson_subcommand(tmp_path, capsys):
    code, out, _ = run(["carleson", "--named", "rank1-half", "--quick",
                        "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "admits reverse Carleson measure: True" in out
    lines = (tmp_path / "carleson.csv").read_text().splitlines()
    assert lines[1] == "lam,h1,h2,g"


def test_mz_test_subcommand(capsys):
    code, out, _ = run(["mz-test", "--named", "cusp"], capsys)
    assert code == 0
    assert "invariant: True" in out
    code, out, _ = run(["mz-test", "--named", "dirichlet-pair"], capsys)
    assert code == 0
    assert "invariant: True" in out


def test_poly_density_subcommand(tmp_path, capsys):
    code, out, _ = run(["poly-density", "--named", "rank1-half",
                        "--kernel-at", "0.5", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert (tmp_path / "poly_density.csv").exists()


def test_factor_subcommand(capsys):
    code, out, _ = run(["factor", "--named", "cusp"], capsys)
    assert code == 0
    assert "residual" in out


def test_rank_subcommand(capsys):
    code, out, _ = run(["rank", "--named", "dirichlet-pair", "--quick"], capsys)
    assert code == 0
    assert "numerical defect rank: 2" in out


def test_dual_subcommand(capsys):
    code, out, _ = run(["dual", "--weights", "1,0.5,0.25"], capsys)
    assert code == 0
    assert "dual=4" in out
    code, _, _ = run(["dual"], capsys)
    assert code == 2


def test_verify_subcommand_passes(capsys):
    for name in ("h2", "rank1-half"):
        code, out, _ = run(["verify", "--named", name], capsys)
        assert code == 0
        assert "FAIL" not in out


def test_suite_quick_json_schema(tmp_path, capsys):
    code, out, _ = run(["suite", "--quick", "--json", "--out", str(tmp_path)], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["tool"] == "hbspace"
    assert payload["passed"] is True
    assert payload["quick"] is True
    assert len(payload["results"]) == 12
    for item in payload["results"]:
        assert set(item) == {"id", "name", "passed", "detail", "elapsed_seconds"}
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["passed"] is True


def test_thread_fanout_is_deterministic(tmp_path, capsys, monkeypatch):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    code, _, _ = run(["kernel", "--named", "rank1-half", "--seed", "3",
                      "--out", str(d1)], capsys)
    assert code == 0
    monkeypatch.setenv("HBSPACE_THREADS", "4")
    code, _, _ = run(["kernel", "--named", "rank1-half", "--seed", "3",
                      "--out", str(d2)], capsys)
    assert code == 0
    assert (d1 / "kernel.csv").read_bytes() == (d2 / "kernel.csv").read_bytes()
