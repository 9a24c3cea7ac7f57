"""
命令行测试
退出码：0 成功，1 数值阶段失败，2 输入输出或解析失败，3 类 𝒮 校验拒绝
"""

import json
import math

import numpy as np
import pandas as pd
import pytest


def _write_config(path, problem, **groups):
    data = {"problem": problem}
    data.update(groups)
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


ZERO_PROBLEM = {
    "grid": {"x_max": 4.0, "n": 129},
    "u": {"type": "zero"},
    "p": {"type": "zero"},
    "alpha": 0.3,
}
SMALL_GROUPS = {
    "spectral": {"k_max": 8.0, "n_k": 64, "n_zeta": 65},
    "inverse": {"n_recon": 33, "n_marchenko": 33},
}


class TestCli:
    """命令行子命令测试"""

    @pytest.fixture
    def runner(self):
        from click.testing import CliRunner
        return CliRunner()

    @pytest.fixture
    def zero_config(self, tmp_path):
        return _write_config(tmp_path / "zero.json", ZERO_PROBLEM, **SMALL_GROUPS)

    def _forward(self, runner, config, output):
        from src.main import cli
        return runner.invoke(cli, ["forward", "--config", str(config), "--output", str(output)])

    def test_forward_zero_potential(self, runner, tmp_path, zero_config):
        """测试: 零势正问题输出 S ≡ −e^{2iα} 与元数据"""
        result = self._forward(runner, zero_config, tmp_path)
        assert result.exit_code == 0, result.output

        frame = pd.read_csv(tmp_path / "scattering.csv")
        assert list(frame.columns) == ["k", "re_S", "im_S"]
        assert len(frame) == 64
        S = frame["re_S"].to_numpy() + 1j * frame["im_S"].to_numpy()
        assert np.max(np.abs(S + np.exp(0.6j))) < 1e-12

        meta = json.loads((tmp_path / "scattering.json").read_text(encoding="utf-8"))
        assert meta["winding"] == 0
        assert meta["beta"] == pytest.approx(0.3)
        assert meta["gamma_estimate"] == pytest.approx(meta["gamma_expected"])

    def test_forward_gaussian(self, runner, tmp_path):
        """测试: 高斯势正问题，绕数为 0，行数等于 n_k"""
        from src.main import cli

        problem = {
            "grid": {"x_max": 8.0, "n": 513},
            "u": {"type": "gaussian", "amplitude": 0.3, "center": 2.0, "width": 0.5},
            "p": {"type": "gaussian", "amplitude": 0.3, "center": 3.0, "width": 0.5},
            "alpha": 0.5,
        }
        config = _write_config(tmp_path / "gauss.json", problem)
        result = runner.invoke(cli, [
            "forward", "--config", str(config), "--output", str(tmp_path / "g.csv"),
            "--k-max", "16", "--n-k", "256",
        ])
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(tmp_path / "g.csv")) == 256
        meta = json.loads((tmp_path / "g.json").read_text(encoding="utf-8"))
        assert meta["winding"] == 0
        assert meta["max_unimodularity_deviation"] < 1e-6
        assert meta["ratio_s_gap"] < 1e-10

    def test_malformed_config(self, runner, tmp_path):
        """测试: 配置文件不是合法 JSON 时退出码 2"""
        from src.main import cli

        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        result = runner.invoke(cli, ["forward", "--config", str(bad), "--output", str(tmp_path)])
        assert result.exit_code == 2

    def test_missing_problem(self, runner, tmp_path):
        """测试: 未给出问题定义时退出码 2"""
        from src.main import cli

        result = runner.invoke(cli, ["forward", "--output", str(tmp_path)])
        assert result.exit_code == 2

    def test_inverse_zero_potential(self, runner, tmp_path, zero_config):
        """测试: 零势数据的反问题恢复 α 与零势"""
        from src.main import cli

        assert self._forward(runner, zero_config, tmp_path).exit_code == 0
        result = runner.invoke(cli, [
            "inverse", str(tmp_path / "scattering.csv"),
            "--config", str(zero_config), "--output", str(tmp_path),
        ])
        assert result.exit_code == 0, result.output

        frame = pd.read_csv(tmp_path / "reconstruction.csv")
        assert list(frame.columns) == ["x", "u", "p", "re_v", "im_v", "phi"]
        assert np.max(np.abs(frame["u"].to_numpy())) < 1e-10
        meta = json.loads((tmp_path / "reconstruction.meta.json").read_text(encoding="utf-8"))
        assert abs(meta["alpha"] - 0.3) < 1e-3
        assert meta["validation_report"]["passed"] is True
        assert (tmp_path / "reconstruction.problem.json").exists()

    def test_inverse_missing_file(self, runner, tmp_path):
        """测试: 输入文件不存在时退出码 2"""
        from src.main import cli

        result = runner.invoke(cli, ["inverse", str(tmp_path / "none.csv"), "--output", str(tmp_path)])
        assert result.exit_code == 2

    def test_inverse_non_unimodular(self, runner, tmp_path, zero_config):
        """测试: |S| ≠ 1 的数据被拒绝，退出码 3，并写出拒绝元数据"""
        from src.main import cli
        from src.direct import symmetric_k_grid

        k = symmetric_k_grid(8.0, 64)
        pd.DataFrame({"k": k, "re_S": np.full(k.size, 1.1), "im_S": np.zeros(k.size)}).to_csv(
            tmp_path / "bad_s.csv", index=False
        )
        result = runner.invoke(cli, [
            "inverse", str(tmp_path / "bad_s.csv"), "--config", str(zero_config), "--output", str(tmp_path),
        ])
        assert result.exit_code == 3
        meta = json.loads((tmp_path / "reconstruction.meta.json").read_text(encoding="utf-8"))
        assert meta["status"] == "rejected"
        assert "unimodularity" in meta["validation_report"]["failures"]

    def test_validate_forward_output(self, runner, tmp_path, zero_config):
        """测试: 正问题输出通过校验，标准输出为 JSON 报告"""
        from src.main import cli

        assert self._forward(runner, zero_config, tmp_path).exit_code == 0
        result = runner.invoke(cli, [
            "validate", str(tmp_path / "scattering.csv"), "--config", str(zero_config),
        ])
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["passed"] is True
        assert report["winding"] == 0

    def test_validate_winding_one(self, runner, tmp_path, zero_config):
        """测试: 绕数为 1 的数据校验失败，退出码 3"""
        from src.main import cli
        from src.direct import symmetric_k_grid

        k = symmetric_k_grid(16.0, 1024)
        S = (1 + 2j * k) / (1 - 2j * k)
        pd.DataFrame({"k": k, "re_S": S.real, "im_S": S.imag}).to_csv(tmp_path / "w1.csv", index=False)
        result = runner.invoke(cli, [
            "validate", str(tmp_path / "w1.csv"), "--config", str(zero_config), "--output", str(tmp_path),
        ])
        assert result.exit_code == 3
        report = json.loads((tmp_path / "validation.report.json").read_text(encoding="utf-8"))
        assert report["winding"] == 1
        assert "winding" in report["failures"]

    def test_validate_empty_file(self, runner, tmp_path):
        """测试: 空文件退出码 2"""
        from src.main import cli

        empty = tmp_path / "empty.csv"
        empty.write_text("")
        assert runner.invoke(cli, ["validate", str(empty)]).exit_code == 2

    def test_roundtrip_zero_potential(self, runner, tmp_path, zero_config):
        """测试: 零势往返通过，写出报告"""
        from src.main import cli

        result = runner.invoke(cli, ["roundtrip", "--config", str(zero_config), "--output", str(tmp_path)])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "run.roundtrip.json").read_text(encoding="utf-8"))
        assert report["status"] == "passed"
        assert report["errors"]["alpha_error"] < 1e-3

    def test_roundtrip_domain_too_short(self, runner, tmp_path):
        """测试: 截断长度不足时往返失败，退出码非零"""
        from src.main import cli

        problem = {
            "grid": {"x_max": 4.0, "n": 129},
            "u": {"type": "gaussian", "amplitude": 1.0, "center": 4.0, "width": 1.0},
            "p": {"type": "zero"},
            "alpha": 0.0,
        }
        config = _write_config(
            tmp_path / "short.json", problem,
            spectral={"k_max": 8.0, "n_k": 256, "n_zeta": 65},
            inverse={"n_recon": 33, "n_marchenko": 33},
        )
        result = runner.invoke(cli, ["roundtrip", "--config", str(config), "--output", str(tmp_path)])
        assert result.exit_code in (1, 3)

    def test_flags_override_config(self, runner, tmp_path, zero_config):
        """测试: 命令行参数覆盖配置文件"""
        from src.main import cli

        result = runner.invoke(cli, [
            "forward", "--config", str(zero_config), "--output", str(tmp_path), "--n-k", "32",
        ])
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(tmp_path / "scattering.csv")) == 32
        meta = json.loads((tmp_path / "scattering.json").read_text(encoding="utf-8"))
        assert meta["config"]["spectral"]["n_k"] == 32
        assert math.isclose(meta["config"]["grid"]["x_max"], 4.0)
