"""
COLOR ALGEBRA ENGINE - COMMAND LINE TESTS
=========================================
Run with: pytest tests/test_cli.py -v
"""

import json
import sys
from pathlib import Path

import pytest
from typer.testing import CliRunner

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from cli import app

Q_FACTOR = ["--group", "3,3", "--exponents", "0,1;-1,0", "--block-degrees", "0,0;1,0;0,1"]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("COLORLIE_BUDGET", "COLORLIE_SEED", "COLORLIE_LOG_LEVEL", "COLORLIE_CONFIG"):
        monkeypatch.delenv(var, raising=False)


class TestCli:

    def setup_method(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(app, [str(a) for a in args])

    def build(self, tmp_path, name, *args, filename="algebra.json"):
        path = tmp_path / filename
        result = self.invoke("build", name, *args, "-o", path)
        assert result.exit_code == 0, result.output
        return path

    def verify(self, tmp_path, spec, *args, filename="report.json"):
        report = tmp_path / filename
        result = self.invoke("verify", spec, "--report", report, *args)
        data = json.loads(report.read_text(encoding="utf-8")) if report.exists() else None
        return result, data

    def test_build_then_verify(self, tmp_path):
        spec = self.build(tmp_path, "mat3", "--sizes", "2,1,1")
        result, data = self.verify(tmp_path, spec)
        assert result.exit_code == 0
        assert data["status"] == "pass"
        names = [s["name"] for s in data["sections"]]
        assert names[:2] == ["factor", "symmetries"]
        assert "representation" in names

    def test_poincare(self, tmp_path):
        spec = self.build(tmp_path, "iso3", "--dim", 4)
        assert len(json.loads(spec.read_text(encoding="utf-8"))["basis"]) == 14
        result, data = self.verify(tmp_path, spec)
        assert result.exit_code == 0
        jacobi = [s for s in data["sections"] if s["name"].startswith("jacobi.")]
        assert len(jacobi) == 4

    def test_counterexample_exits_one(self, tmp_path):
        spec = self.build(tmp_path, "mat3", "--sizes", "2,1,1", "--no-rep")
        data = json.loads(spec.read_text(encoding="utf-8"))
        target = {"Y[1,3]", "Y[3,4]", "Y[4,2]"}
        entry = next(e for e in data["f_ary"] if set(e["args"]) == target)
        for term in entry["value"]:
            for c in term["coeff"]:
                c["num"] = -c["num"]
        spec.write_text(json.dumps(data), encoding="utf-8")
        result, report = self.verify(tmp_path, spec)
        assert result.exit_code == 1
        assert report["status"] == "fail"
        failed = [s for s in report["sections"] if s["status"] == "fail"]
        assert failed and failed[0]["counterexamples"]

    def test_nonsense_file_exits_two(self, tmp_path):
        spec = tmp_path / "nonsense.json"
        spec.write_text("this is not an algebra", encoding="utf-8")
        result, report = self.verify(tmp_path, spec)
        assert result.exit_code == 2
        assert report is None

    def test_quon_realization(self, tmp_path):
        spec = self.build(tmp_path, "mat3", "--sizes", "1,1,1")
        result = self.invoke("realize", spec, "--mode", "quon", "--report", tmp_path / "r.json")
        assert result.exit_code == 0

    def test_fermionic_oscillators_on_super_gl(self, tmp_path):
        spec = self.build(tmp_path, "color_gl", "--group", "2", "--exponents", "1", "--sizes", "1,1")
        result = self.invoke("realize", spec, "--mode", "oscillator", "--epsilon=1",
                             "--report", tmp_path / "r.json")
        assert result.exit_code == 0

    def test_realization_needs_representation(self, tmp_path):
        spec = self.build(tmp_path, "mat3", "--no-rep")
        result = self.invoke("realize", spec, "--mode", "quon")
        assert result.exit_code == 2

    def test_bad_epsilon(self, tmp_path):
        spec = self.build(tmp_path, "mat3")
        result = self.invoke("realize", spec, "--epsilon=0")
        assert result.exit_code == 2

    def test_lambda_multiplicity_bounds(self, tmp_path):
        spec = self.build(tmp_path, "color_gl", "--group", "2", "--exponents", "1", "--sizes", "1,1")
        low = self.invoke("realize", spec, "--mode", "lambda", "--multiplicity", 2)
        assert low.exit_code == 2
        ok = self.invoke("realize", spec, "--mode", "lambda", "--multiplicity", 3,
                         "--report", tmp_path / "r.json")
        assert ok.exit_code == 0

    def test_decolor_from_file(self, tmp_path):
        colored = self.build(tmp_path, "color_gl", "--sizes", "1,1,1", *Q_FACTOR)
        plain = self.build(tmp_path, "decolor", "--input", colored, filename="plain.json")
        data = json.loads(plain.read_text(encoding="utf-8"))
        assert data["name"] == "decolor(gl(1,1,1))"
        assert "multiplier" in data
        result, report = self.verify(tmp_path, plain)
        assert result.exit_code == 0
        assert "multiplier" in [s["name"] for s in report["sections"]]

    def test_decolor_needs_input(self):
        assert self.invoke("build", "decolor").exit_code == 2

    def test_unknown_construction(self):
        assert self.invoke("build", "e8").exit_code == 2

    def test_reports_are_byte_identical(self, tmp_path):
        spec = self.build(tmp_path, "tensor_clifford", "--base", "gl2", "--n", 3)
        self.verify(tmp_path, spec, "--budget", 500, filename="first.json")
        self.verify(tmp_path, spec, "--budget", 500, filename="second.json")
        first = (tmp_path / "first.json").read_bytes()
        assert first == (tmp_path / "second.json").read_bytes()
        assert json.loads(first)["sections"][2]["sampled"]

    def test_selected_checks(self, tmp_path):
        spec = self.build(tmp_path, "mat3")
        _, report = self.verify(tmp_path, spec, "--checks", "symmetries")
        assert [s["name"] for s in report["sections"]] == ["symmetries"]
        result, _ = self.verify(tmp_path, spec, "--checks", "symmetries,noise")
        assert result.exit_code == 2

    def test_show(self, tmp_path):
        spec = self.build(tmp_path, "iso3", "--dim", 3)
        result = self.invoke("show", spec)
        assert result.exit_code == 0
        assert '"dimension": 9' in result.output
