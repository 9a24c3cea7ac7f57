"""
散射数据表示与类 𝒮 校验测试
"""

import json
import math

import numpy as np
import pytest


@pytest.fixture
def k_grid():
    from src.direct import symmetric_k_grid
    return symmetric_k_grid(64.0, 4096)


def _samples(k, values):
    from src.direct import ScatteringSamples
    return ScatteringSamples(k_grid=k, values=values)


class TestExtractGamma:
    """γ 的提取测试"""

    def test_constant_minus_one(self, k_grid):
        """测试: S ≡ −1 时 γ = π/2"""
        from src.scatdata import extract_gamma

        assert extract_gamma(_samples(k_grid, -np.ones(k_grid.size))).gamma == pytest.approx(math.pi / 2)

    def test_constant_one(self, k_grid):
        """测试: S ≡ 1 时 γ = 0"""
        from src.scatdata import extract_gamma

        assert extract_gamma(_samples(k_grid, np.ones(k_grid.size))).gamma == pytest.approx(0.0, abs=1e-14)

    def test_phase_equivariance(self, k_grid):
        """测试: S 乘以 e^{iθ} 时 γ 平移 θ/2（模 π）"""
        from src.scatdata import extract_gamma
        from src.transform import mod_pi_distance

        base = np.exp(1.2j) + 0.5 / (1.0 - 2j * k_grid)
        g0 = extract_gamma(_samples(k_grid, base)).gamma
        g1 = extract_gamma(_samples(k_grid, np.exp(0.8j) * base)).gamma
        assert mod_pi_distance(g1, g0 + 0.4) < 1e-12

    def test_synthesized_from_compact_F(self, k_grid):
        """测试: 由 γ 与紧支撑 F 合成的 S 还原出 γ"""
        from src.numerics import UniformGrid, SampledFunction
        from src.scatdata import extract_gamma, synthesize_S

        F = SampledFunction.from_function(UniformGrid(4.0, 401), lambda z: np.exp(-z))
        S = synthesize_S(0.7, F, k_grid)
        assert abs(extract_gamma(S).gamma - 0.7) < 1e-4

    def test_unsettled_tails(self):
        """测试: 外带未收敛报错"""
        from src.direct import symmetric_k_grid
        from src.scatdata import extract_gamma
        from src.errors import TailNotSettledError

        k = symmetric_k_grid(1.0, 64)
        with pytest.raises(TailNotSettledError):
            extract_gamma(_samples(k, (1 + 2j * k) / (1 - 2j * k)))


class TestExtractF:
    """F 的提取测试"""

    def test_constant_gives_zero(self, k_grid):
        """测试: S 为常数时 F ≡ 0"""
        from src.scatdata import extract_F

        S = _samples(k_grid, np.full(k_grid.size, np.exp(0.6j)))
        result = extract_F(S, 0.3, 8.0, 201)
        assert np.max(np.abs(result.F.values)) < 1e-10
        assert result.negative_mass < 1e-10

    def test_exponential_with_tail_correction(self, k_grid):
        """测试: S = e^{2iγ} + 1/(1−2ik) 还原 F = e^{−ζ}，负半轴为零"""
        from src.scatdata import extract_F

        gamma = 0.4
        S = _samples(k_grid, np.exp(2j * gamma) + 1.0 / (1.0 - 2j * k_grid))
        result = extract_F(S, gamma, 8.0, 801)
        zeta = result.grid.nodes
        exact = np.exp(-zeta)
        error = np.sqrt(np.sum(result.grid.trapezoid_weights() * np.abs(result.F.values - exact) ** 2))
        assert error / result.F.norm_l2() <= 1e-2
        a1, a2 = result.tail_coefficients
        assert abs(a1 - 1.0) < 1e-8 and abs(a2 - 1.0) < 1e-8
        assert result.negative_mass < 1e-6

    def test_exponential_without_tail_correction(self, k_grid):
        """测试: 不做尾项修正时远离 ζ = 0 处仍逐点收敛"""
        from src.scatdata import extract_F

        gamma = 0.4
        S = _samples(k_grid, np.exp(2j * gamma) + 1.0 / (1.0 - 2j * k_grid))
        result = extract_F(S, gamma, 8.0, 801, tail_correction=False)
        zeta = result.grid.nodes
        window = (zeta >= 3.0) & (zeta <= 4.0)
        assert np.max(np.abs(result.F.values[window] - np.exp(-zeta[window]))) < 3e-3
        assert result.tail_coefficients == (0j, 0j)

    def test_linearity(self, k_grid):
        """测试: F 对 S − e^{2iγ} 线性"""
        from src.scatdata import extract_F

        gamma = 0.9
        base = np.exp(2j * gamma)
        g1 = 1.0 / (1.0 - 2j * k_grid)
        g2 = 0.3 * np.exp(-k_grid ** 2) * np.exp(1j * k_grid)
        F1 = extract_F(_samples(k_grid, base + g1), gamma, 4.0, 101).F.values
        F2 = extract_F(_samples(k_grid, base + g2), gamma, 4.0, 101).F.values
        F12 = extract_F(_samples(k_grid, base + g1 + g2), gamma, 4.0, 101).F.values
        assert np.max(np.abs(F12 - F1 - F2)) < 1e-10


class TestValidation:
    """类 𝒮 校验测试"""

    def test_forward_data_passes(self, make_problem):
        """测试: 正问题得到的 S 通过校验"""
        from src.transform import to_zsakns
        from src.direct import scattering_function, symmetric_k_grid
        from src.scatdata import validate_class_S

        S = scattering_function(to_zsakns(make_problem(alpha=0.3, n=513)), symmetric_k_grid(16.0, 256))
        report = validate_class_S(S, zeta_max=16.0, n_zeta=257)
        assert report.passed, f"校验失败: {report.messages}"
        assert report.winding == 0
        assert report.F_l2 is not None and report.F_l2 > 0

    def test_non_unimodular_rejected(self, k_grid):
        """测试: S ≡ 1.1 不满足单位模"""
        from src.scatdata import validate_class_S

        report = validate_class_S(_samples(k_grid, np.full(k_grid.size, 1.1 + 0j)), zeta_max=4.0, n_zeta=65)
        assert not report.passed
        assert report.failures() == ["unimodularity"]
        assert report.max_unimodularity_deviation == pytest.approx(0.1)

    def test_nonzero_winding_rejected(self, blaschke_samples):
        """测试: 绕数为 1 的 S 被拒绝"""
        from src.scatdata import validate_class_S

        report = validate_class_S(blaschke_samples, zeta_max=4.0, n_zeta=65)
        assert report.unimodular
        assert report.winding == 1
        assert "winding" in report.failures()

    def test_report_is_json_serializable(self, blaschke_samples):
        """测试: 报告字典可以直接写成 JSON"""
        from src.scatdata import validate_class_S

        data = validate_class_S(blaschke_samples, zeta_max=4.0, n_zeta=65).to_dict()
        text = json.dumps(data)
        assert json.loads(text)["passed"] is False

    def test_scattering_data_rejects(self, k_grid):
        """测试: 构造散射数据时校验失败抛出类 𝒮 拒绝，退出码 3"""
        from src.config import Config
        from src.scatdata import ScatteringData
        from src.errors import ClassSRejection

        settings = Config().updated({"spectral": {"n_zeta": 65}})
        with pytest.raises(ClassSRejection) as info:
            ScatteringData.from_samples(_samples(k_grid, np.full(k_grid.size, 1.1 + 0j)), settings)
        assert info.value.exit_code == 3
        assert info.value.report_dict()["failures"] == ["unimodularity"]
