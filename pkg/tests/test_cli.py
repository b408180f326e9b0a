import json

import pytest

from tbcomplexity.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_torsion_prints_value(capsys):
    assert run(capsys, "torsion", "2") == (0, "5\n", "")


def test_fib(capsys):
    assert run(capsys, "fib", "13")[1] == "233\n"


def test_fib_domain_error(capsys):
    code, _, err = run(capsys, "fib", "0")
    assert code == 2 and "error" in err


def test_certify_json(capsys):
    code, out, _ = run(capsys, "certify", "n8", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"version", "command", "inputs", "results", "timing_ms"}
    cert = data["results"]["certificate"]
    assert cert["upper"]["value"] == 2 and cert["lower"] == 2 and cert["status"] == "exact"


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "torsion", "3")
    assert code == 0 and json.loads(out)["results"]["value"] == 16


def test_reports_byte_identical(capsys):
    first = run(capsys, "certify", "sibling", "4", "--json")[1]
    assert run(capsys, "certify", "sibling", "4", "--json")[1] == first


def test_timing_is_opt_in(capsys):
    data = json.loads(run(capsys, "bound", "mn", "5", "--json", "--timing")[1])
    assert data["timing_ms"] is not None
    assert json.loads(run(capsys, "bound", "mn", "5", "--json")[1])["timing_ms"] is None


def test_build_then_stats_and_volume(capsys, tmp_path):
    path = tmp_path / "t3.tri"
    assert run(capsys, "build", "n8", "--cover", "3", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "stats", str(path), "--json")
    data = json.loads(out)["results"]
    assert data["tetrahedra"] == 6
    assert [e["valence"] for e in data["edge_classes"]] == [6] * 6
    code, out, _ = run(capsys, "volume", str(path), "--quiet")
    assert code == 0 and float(out) == pytest.approx(6.08964963846, abs=1e-10)


def test_build_base_writes_cocycle(capsys, tmp_path):
    path = tmp_path / "sib.tri"
    run(capsys, "build", "sibling", "-o", str(path))
    assert "weight" in path.read_text()
    data = json.loads(run(capsys, "stats", str(path), "--json")[1])["results"]
    assert data["cocycle_valid"] is True


def test_bad_file_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.tri"
    path.write_text("tri v1\ntetrahedra 1\nglue 0 0 -> 0 1 perm 1 0 2 3\n")
    code, _, err = run(capsys, "stats", str(path))
    assert code == 2 and "line" in err
    assert run(capsys, "stats", str(tmp_path / "missing.tri"))[0] == 2


def test_solver_failure_exits_3(capsys, monkeypatch):
    import tbcomplexity.certify as certify
    from tbcomplexity.errors import NoGeometricSolution

    def fail(*args, **kwargs):
        raise NoGeometricSolution("forced")

    monkeypatch.setattr(certify, "solve_gluing", fail)
    code, out, _ = run(capsys, "certify", "n8", "2", "--json")
    assert code == 3
    assert json.loads(out)["results"]["certificate"]["status"] == "gap"


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["torsion", "2", "--bogus"])
    assert info.value.code == 2


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "mn", "6")
    assert code == 0 and len(out.strip().splitlines()) == 8
    assert run(capsys, "table", "nn", "51")[0] == 2


def test_bound_usage(capsys):
    assert run(capsys, "bound", "lens", "5")[0] == 2
    code, out, _ = run(capsys, "bound", "lens", "5", "3", "--quiet")
    assert out.split()[1:] == ["1", "1"]
