"""End-to-end tests of the command-line interface."""

import json

import pytest

from monocurv import cli
from monocurv.monotone import SymmetricMeasure, dump_measure
from monocurv.nlevel import scalar_curvature
from monocurv.monotone import catalog


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGridParsing:
    def test_inclusive_endpoints(self):
        grid = cli.parse_grid("-0.95:0.95:39")
        assert len(grid) == 39
        assert grid[0] == -0.95
        assert grid[-1] == 0.95
        assert grid[19] == pytest.approx(0.0, abs=1e-15)

    def test_count_and_order_validation(self):
        with pytest.raises(ValueError):
            cli.parse_grid("0:1:1")
        with pytest.raises(ValueError):
            cli.parse_grid("1:0:5")
        with pytest.raises(ValueError):
            cli.parse_grid("0:1")

    def test_scalar_or_grid(self):
        assert list(cli.parse_scalar_or_grid("0.45")) == [0.45]
        assert len(cli.parse_scalar_or_grid("0:0.03:7")) == 7


class TestCurveCommand:
    def test_sweep_shape_and_tolerance(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, _, _ = run(
            capsys, "curve", "--f", "catalog:smallest", "--grid=-0.95:0.95:39",
            "--out", str(out), "--tol", "1e-6",
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "a,r_closed,r_sums,r_geometric,max_rel_disagreement"
        assert len(lines) == 40
        for line in lines[1:]:
            assert float(line.split(",")[4]) < 1e-6

    def test_byte_identical_reruns(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "curve", "--f", "catalog:kubo_mori", "--grid=-0.5:0.5:11", "--out", str(a))
        run(capsys, "curve", "--f", "catalog:kubo_mori", "--grid=-0.5:0.5:11", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_tolerance_breach_exits_two(self, capsys):
        code, _, err = run(
            capsys, "curve", "--f", "catalog:smallest", "--grid=-0.5:0.5:5", "--tol", "1e-18",
        )
        assert code == 2
        assert "verification failure" in err

    def test_parametrized_families(self, capsys):
        code, out, _ = run(
            capsys, "curve", "--f", "catalog:wyd", "--beta", "0.5", "--grid=-0.3:0.3:5"
        )
        assert code == 0
        assert len(out.splitlines()) == 6


class TestClassifyCommand:
    def test_sld_report(self, capsys):
        code, out, _ = run(capsys, "classify", "--f", "catalog:sld")
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "Degenerate"
        assert report["c0"] == pytest.approx(6.0, abs=1e-12)
        assert report["moment_summary"] is None

    def test_measure_report_includes_moments(self, capsys, tmp_path):
        path = tmp_path / "family.json"
        dump_measure(SymmetricMeasure(atoms=[(0.45, 0.25), (0.0, 0.25)]), str(path))
        code, out, _ = run(capsys, "classify", "--f", f"measure:{path}")
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "LocalMin"
        assert report["decided_by"] == "MomentCondition"
        assert report["moment_summary"]["m"] == pytest.approx(2 * 0.45 * 0.55)


class TestFamilyScanCommand:
    def test_sign_flip_near_boundary(self, capsys):
        code, out, _ = run(capsys, "family-scan", "--p", "0.45", "--q", "0:0.03:7")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "p,q,t_value,c2,verdict"
        assert len(lines) == 8
        signs = [float(line.split(",")[2]) < 0 for line in lines[1:]]
        # negative up to q(0.45) = 0.0207, positive from q = 0.025 on
        assert signs == [True, True, True, True, True, False, False]
        verdicts = [line.split(",")[4] for line in lines[1:]]
        assert verdicts[0] == "LocalMin"
        assert verdicts[-1] == "LocalMax"


class TestNlevelCommand:
    def test_matches_library(self, capsys):
        code, out, _ = run(
            capsys, "nlevel", "--f", "catalog:kubo_mori", "--spectrum", "0.5,0.3,0.2"
        )
        assert code == 0
        report = json.loads(out)
        want = scalar_curvature(catalog("kubo_mori"), (0.5, 0.3, 0.2))
        assert report["scalar_curvature"] == pytest.approx(want, rel=1e-12)

    def test_normalization_gate(self, capsys):
        code, _, err = run(
            capsys, "nlevel", "--f", "catalog:sld", "--spectrum", "0.5,0.4"
        )
        assert code == 1
        assert "1e-9" in err

    def test_sub_tolerance_residue_is_normalized(self, capsys):
        code, out, _ = run(
            capsys, "nlevel", "--f", "catalog:sld", "--spectrum", "0.1,0.2,0.7"
        )
        assert code == 0
        assert sum(json.loads(out)["spectrum"]) == pytest.approx(1.0, abs=1e-12)


class TestCatalogCommand:
    def test_lists_seven_families(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("name,")
        assert len(lines) == 8
        assert all(float(line.rsplit(",", 1)[1]) < 1e-10 for line in lines[1:])

    def test_module_entry_point_matches_in_process(self, capsys, tmp_path):
        """python -m invocation produces the same bytes as the library call."""
        import subprocess
        import sys

        out = tmp_path / "catalog.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "monocurv.cli", "catalog", "--out", str(out)],
            capture_output=True,
        )
        assert proc.returncode == 0
        _, in_process, _ = run(capsys, "catalog")
        assert out.read_text() == in_process


class TestErrorPaths:
    def test_unknown_catalog_name(self, capsys):
        code, _, err = run(capsys, "classify", "--f", "catalog:nope")
        assert code == 1
        assert "unknown catalog" in err

    def test_malformed_function_spec(self, capsys):
        code, _, err = run(capsys, "classify", "--f", "sld")
        assert code == 1

    def test_missing_measure_file(self, capsys):
        code, _, err = run(capsys, "classify", "--f", "measure:/does/not/exist.json")
        assert code == 1

    def test_invalid_measure_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "classify", "--f", f"measure:{path}")
        assert code == 1

    def test_invalid_measure_contents(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"atoms": [{"t": 0.3, "w": 0.4}]}))
        code, _, err = run(capsys, "classify", "--f", f"measure:{path}")
        assert code == 1
        assert "mass" in err

    def test_negative_eigenvalue(self, capsys):
        code, _, err = run(
            capsys, "nlevel", "--f", "catalog:sld", "--spectrum", "1.2,-0.2"
        )
        assert code == 1


class TestVerifyCommand:
    def test_battery_output_and_exit_code(self, capsys):
        """The battery prints one line per criterion.

        Criterion 5's stated grid contains one point that exact arithmetic
        refutes, so the battery honestly exits 2 with exactly that failure.
        """
        code, out, _ = run(capsys, "verify")
        lines = out.splitlines()
        assert len(lines) == 11
        statuses = {line.split()[1]: line.split()[2] for line in lines[:-1]}
        assert statuses == {f"{i:02d}": ("FAIL" if i == 5 else "PASS") for i in range(1, 11)}
        assert "9/10" in lines[-1]
        assert code == 2
