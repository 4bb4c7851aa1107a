import json

import pytest

from spingeo.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out


class TestClassify:
    def test_human_output(self, capsys):
        code, out = run_cli(capsys, ["classify", "3", "0"])
        assert code == 0
        assert out.strip() == "Cl(3,0) = H + H"

    def test_json_schema_field(self, capsys):
        code, out = run_cli(capsys, ["classify", "2", "0", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == "spingeo-report/1"
        assert data["result"] == {"base": "H", "size": 1, "doubled": False}

    def test_complex_flag(self, capsys):
        code, out = run_cli(capsys, ["classify", "--complex", "4"])
        assert code == 0
        assert "M4(C)" in out

    def test_even_flag(self, capsys):
        code, out = run_cli(capsys, ["classify", "2", "0", "--even"])
        assert code == 0
        assert out.strip() == "Cl^0(2,0) = C"


class TestSpinrep:
    def test_all_checks_pass(self, capsys):
        code, out = run_cli(
            capsys, ["spinrep", "4", "--check", "all", "--seed", "1", "--trials", "3"]
        )
        assert code == 0
        assert "PASS" in out

    def test_json_payload(self, capsys):
        code, out = run_cli(
            capsys,
            ["spinrep", "2", "--check", "berezin", "--seed", "5", "--format", "json"],
        )
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert data["results"]["berezin_residual"] <= 1e-10


class TestGenus:
    def test_euler_torus_is_zero(self, capsys):
        code, out = run_cli(capsys, ["genus", "--name", "euler", "--model", "torus2"])
        assert code == 0
        assert "integral = 0" in out

    def test_euler_sphere_json(self, capsys):
        code, out = run_cli(
            capsys,
            ["genus", "--name", "euler", "--model", "sphere2", "--radius", "1/2", "--format", "json"],
        )
        assert code == 0
        data = json.loads(out)
        assert data["integral"] == "2"

    def test_missing_model_file_exits_2(self, capsys):
        code, _ = run_cli(capsys, ["genus", "--model-file", "/nonexistent/model.json"])
        assert code == 2


class TestCech:
    def test_torus_spin_structures(self, capsys):
        code, out = run_cli(capsys, ["cech", "--nerve", "torus", "--w2", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["cohomology_dims"] == {"H0": 1, "H1": 2, "H2": 1}
        assert data["spin_structures"] == 4
        assert data["torsor_verified"] is True

    def test_missing_nerve_file_exits_2(self, capsys):
        code, _ = run_cli(capsys, ["cech", "--nerve", "/nonexistent/nerve.json"])
        assert code == 2

    def test_nerve_from_file(self, capsys, tmp_path):
        path = tmp_path / "nerve.json"
        path.write_text(json.dumps({"patches": 3, "simplices": [[0, 1], [1, 2], [0, 2]]}))
        code, out = run_cli(capsys, [ "cech", "--nerve", str(path), "--format", "json"])
        assert code == 0
        assert json.loads(out)["cohomology_dims"]["H1"] == 1


class TestIndex:
    def test_dlambda_human(self, capsys):
        code, out = run_cli(capsys, ["index", "--model", "dlambda", "--lambda", "3"])
        assert code == 0
        assert "kernel 1" in out and "index 0" in out

    def test_csv_output(self, capsys):
        code, out = run_cli(
            capsys, ["index", "--model", "sphere2", "--t", "0.5,1", "--format", "csv"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,supertrace"
        assert len(lines) == 3
        for line in lines[1:]:
            t, val = line.split(",")
            assert float(val) == pytest.approx(2.0, abs=1e-10)

    def test_torus_dirac_json(self, capsys):
        code, out = run_cli(
            capsys,
            ["index", "--model", "torus_dirac", "--delta", "0.5,0.5", "--cutoff", "4",
             "--t", "0.2", "--format", "json"],
        )
        assert code == 0
        data = json.loads(out)
        assert data["kernel_dim"] == 0
        assert abs(data["rows"][0]["supertrace"]) <= 1e-12

    def test_unknown_model_exits_2(self, capsys):
        code, _ = run_cli(capsys, ["index", "--model", "klein"])
        assert code == 2


class TestSelftest:
    def test_passes_and_is_deterministic(self, capsys):
        code1, out1 = run_cli(capsys, ["selftest", "--seed", "7", "--format", "json"])
        code2, out2 = run_cli(capsys, ["selftest", "--seed", "7", "--format", "json"])
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical for identical seeds
        data = json.loads(out1)
        assert data["passed"] is True
        assert len(data["results"]) == 11


class TestUsageErrors:
    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
