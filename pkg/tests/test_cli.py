import subprocess
import sys

import numpy as np
import pytest

from dewline.cli import main


def _run(argv):
    return main(argv)


class TestCommands:
    def test_generate_writes_scene(self, tmp_path):
        out = tmp_path / "scene.csv"
        assert _run(["--command", "generate", "--output", str(out),
                     "--seed", "3", "--n-samples", "200"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "index,h,b,n,s"
        assert len(lines) == 201

    def test_estimate_from_model(self, tmp_path):
        out = tmp_path / "est.csv"
        assert _run(["--command", "estimate", "--output", str(out),
                     "--seed", "3", "--n-samples", "300"]) == 0
        assert out.read_text().splitlines()[0] == "index,s,b_hat,wet"

    def test_estimate_from_input_file(self, tmp_path):
        sensor = tmp_path / "sensor.csv"
        rng = np.random.default_rng(0)
        drift = np.cumsum(rng.choice([-0.05, 0.05], size=400))
        sensor.write_text("mv\n" + "\n".join(repr(v) for v in drift) + "\n")
        out = tmp_path / "est.csv"
        assert _run(["--command", "estimate", "--input", str(sensor),
                     "--output", str(out), "--scale-T", "4", "--cost-C0", "2.0"]) == 0
        assert len(out.read_text().splitlines()) == 401

    def test_benchmark_and_compare(self, tmp_path):
        bench = tmp_path / "bench.csv"
        assert _run(["--command", "benchmark", "--output", str(bench),
                     "--trials", "2", "--n-samples", "500", "--seed", "1"]) == 0
        assert bench.read_text().startswith("scale_T,cost_C0")
        cmp_out = tmp_path / "cmp.json"
        assert _run(["--command", "compare", "--output", str(cmp_out),
                     "--trials", "1", "--n-samples", "500", "--format", "json"]) == 0
        assert '"method"' in cmp_out.read_text()


class TestErrors:
    def test_missing_input_fails_with_diagnostic(self, tmp_path, capsys):
        code = _run(["--command", "estimate", "--input", str(tmp_path / "nope.csv"),
                     "--output", str(tmp_path / "o.csv")])
        assert code == 1
        assert "dewline:" in capsys.readouterr().err

    def test_no_anchor_failure_is_reported(self, tmp_path, capsys):
        sensor = tmp_path / "ramp.csv"
        sensor.write_text("mv\n" + "\n".join(str(float(i)) for i in range(200)) + "\n")
        code = _run(["--command", "estimate", "--input", str(sensor),
                     "--output", str(tmp_path / "o.csv"), "--cost-C0", "0.001"])
        assert code == 1
        err = capsys.readouterr().err
        assert "estimator" in err

    def test_unknown_command_rejected(self):
        with pytest.raises(SystemExit):
            _run(["--command", "destroy", "--output", "x.csv"])


class TestEnvOutputDir:
    def test_relative_output_resolves_against_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("DEWLINE_OUT_DIR", str(tmp_path))
        assert _run(["--command", "generate", "--output", "sub/scene.csv",
                     "--seed", "1", "--n-samples", "50"]) == 0
        assert (tmp_path / "sub" / "scene.csv").exists()


def test_module_entry_point(tmp_path):
    out = tmp_path / "scene.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "dewline", "--command", "generate",
         "--output", str(out), "--seed", "2", "--n-samples", "60"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
