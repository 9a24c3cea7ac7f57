"""
变换链模块测试
"""

import math

import numpy as np
import pytest
from scipy.special import erfc

from tests.conftest import gaussian


class TestModPi:
    """模 π 约化测试"""

    def test_reduce_mod_pi(self):
        """测试: 约化结果落在 [0, π)"""
        from src.transform import reduce_mod_pi

        assert reduce_mod_pi(0.3) == pytest.approx(0.3)
        assert reduce_mod_pi(0.3 + math.pi) == pytest.approx(0.3)
        assert reduce_mod_pi(-0.3) == pytest.approx(math.pi - 0.3)
        assert 0.0 <= reduce_mod_pi(math.pi) < math.pi

    def test_mod_pi_distance(self):
        """测试: 相差 π 的角距离为 0"""
        from src.transform import mod_pi_distance

        assert mod_pi_distance(0.1, 0.1 + math.pi) == pytest.approx(0.0, abs=1e-12)
        assert mod_pi_distance(0.05, math.pi - 0.05) == pytest.approx(0.1, abs=1e-12)


class TestProblems:
    """问题类型测试"""

    def test_alpha_out_of_range(self):
        """测试: α 不在 [0, π) 内应报错"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import SchrodingerProblem
        from src.errors import DomainError

        grid = UniformGrid(1.0, 11)
        zero = SampledFunction.zeros(grid)
        with pytest.raises(DomainError):
            SchrodingerProblem(u=zero, p=zero, alpha=math.pi)
        with pytest.raises(DomainError):
            SchrodingerProblem(u=zero, p=zero, alpha=-0.1)

    def test_grid_mismatch(self):
        """测试: u 与 p 网格不一致应报错"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import SchrodingerProblem
        from src.errors import DomainError

        with pytest.raises(DomainError):
            SchrodingerProblem(
                u=SampledFunction.zeros(UniformGrid(1.0, 11)),
                p=SampledFunction.zeros(UniformGrid(1.0, 21)),
                alpha=0.0,
            )

    def test_dirac_matrix(self, make_problem):
        """测试: P = [[0, −u], [−u, 2p]]"""
        from src.transform import DiracSystem

        sp = make_problem(n=65)
        P = DiracSystem.from_problem(sp).P.values
        assert np.allclose(P[:, 0, 0], 0.0)
        assert np.allclose(P[:, 0, 1], -sp.u.values)
        assert np.allclose(P[:, 1, 0], -sp.u.values)
        assert np.allclose(P[:, 1, 1], 2.0 * sp.p.values)


class TestPhiFromP:
    """φ = ∫ₓ^∞ p 测试"""

    def test_zero(self):
        """测试: p ≡ 0 时 φ ≡ 0"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import phi_from_p

        phi = phi_from_p(SampledFunction.zeros(UniformGrid(4.0, 41)))
        assert np.all(phi.values == 0.0)

    def test_indicator(self):
        """测试: p 为 [0,1] 的示性函数时 φ(x) = max(0, 1−x)"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import phi_from_p

        grid = UniformGrid(4.0, 401)
        p = SampledFunction.from_function(grid, lambda x: (x <= 1.0).astype(float))
        phi = phi_from_p(p).values
        assert np.max(np.abs(phi - np.maximum(0.0, 1.0 - grid.nodes))) < 2 * grid.h

    def test_gaussian(self):
        """测试: 高斯 p 的 φ 与误差函数闭式一致"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import phi_from_p

        grid = UniformGrid(8.0, 4001)
        p = SampledFunction.from_function(grid, lambda x: gaussian(x, 1.0, 2.0, 0.5))
        exact = 0.5 * math.sqrt(math.pi / 2) * erfc((grid.nodes - 2.0) / (0.5 * math.sqrt(2)))
        assert np.max(np.abs(phi_from_p(p).values - exact)) < 1e-6


class TestToZsakns:
    """薛定谔问题 → ZS-AKNS 问题测试"""

    def test_zero_potential(self, zero_problem):
        """测试: 零势时 v ≡ 0，β = α"""
        from src.transform import to_zsakns

        zp = to_zsakns(zero_problem(alpha=0.3))
        assert np.all(zp.v.values == 0)
        assert zp.beta == pytest.approx(0.3)
        assert zp.p0 == 0.0

    def test_u_only(self):
        """测试: p ≡ 0 时 v = −u，β = α"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import SchrodingerProblem, to_zsakns

        grid = UniformGrid(4.0, 401)
        u = SampledFunction.from_function(grid, lambda x: np.where(x <= 1.0, 1.0, 0.0))
        zp = to_zsakns(SchrodingerProblem(u=u, p=SampledFunction.zeros(grid), alpha=0.0))
        assert np.allclose(zp.v.values, -u.values)
        assert zp.beta == 0.0

    def test_modulus_identity(self, make_problem):
        """测试: |v|² = u² + p² 逐点成立"""
        from src.transform import to_zsakns

        sp = make_problem(alpha=0.7, n=513)
        zp = to_zsakns(sp)
        diff = np.abs(zp.v.values) ** 2 - (sp.u.values ** 2 + sp.p.values ** 2)
        assert np.max(np.abs(diff)) < 1e-12

    def test_beta_shift(self, make_problem):
        """测试: β − α − p₀ 是 π 的整数倍"""
        from src.transform import to_zsakns, mod_pi_distance

        sp = make_problem(alpha=math.pi / 2, n=513)
        zp = to_zsakns(sp)
        assert 0.0 <= zp.beta < math.pi
        assert mod_pi_distance(zp.beta, sp.alpha + zp.p0) < 1e-12
        assert zp.p0 == pytest.approx(zp.phi.values[0])


class TestQuasiDerivative:
    """拟导数测试"""

    def test_linear(self):
        """测试: y = x、u = 0 时 y^{[1]} = 1"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import quasi_derivative

        grid = UniformGrid(1.0, 101)
        y = SampledFunction.from_function(grid, lambda x: x)
        result = quasi_derivative(y, SampledFunction.zeros(grid)).values
        assert np.max(np.abs(result - 1.0)) < 1e-10

    def test_exponential_cancels(self):
        """测试: y = eˣ、u = 1 时 y^{[1]} = O(h²)"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import quasi_derivative

        grid = UniformGrid(1.0, 101)
        y = SampledFunction.from_function(grid, np.exp)
        u = SampledFunction(grid, np.ones(grid.n))
        result = quasi_derivative(y, u).values
        assert np.max(np.abs(result[1:-1])) < 1e-4

    def test_zero(self):
        """测试: y ≡ 0 时 y^{[1]} ≡ 0"""
        from src.numerics import UniformGrid, SampledFunction
        from src.transform import quasi_derivative

        grid = UniformGrid(1.0, 11)
        u = SampledFunction.from_function(grid, np.sin)
        assert np.all(quasi_derivative(SampledFunction.zeros(grid), u).values == 0.0)


class TestChainResidual:
    """Dirac 方程残差测试"""

    def test_zero_potential(self, zero_problem):
        """测试: 零势时残差为零"""
        from src.transform import chain_residual

        assert chain_residual(zero_problem(alpha=0.2, x_max=4.0, n=257), 1.5) <= 1e-10

    def test_second_order_convergence(self, make_problem):
        """测试: 网格步长减半时残差约缩小为 1/4"""
        from src.transform import chain_residual

        coarse = chain_residual(make_problem(n=513), 1.0)
        fine = chain_residual(make_problem(n=1025), 1.0)
        assert 3.0 <= coarse / fine <= 5.0, f"收敛比 {coarse / fine:.3f} 不是二阶"

    def test_higher_frequency(self, make_problem):
        """测试: k = 4 时残差在细网格上足够小"""
        from src.transform import chain_residual

        assert chain_residual(make_problem(n=2049), 4.0) < 1e-3

    def test_rejects_zero_k(self, zero_problem):
        """测试: k = 0 时 y₁ = f^{[1]}/k 无定义，报定义域错误"""
        from src.transform import chain_residual
        from src.errors import DomainError

        with pytest.raises(DomainError):
            chain_residual(zero_problem(), 0.0)


class TestProfiles:
    """问题定义解析测试"""

    def test_gaussian_profile(self):
        """测试: 高斯剖面按参数采样"""
        from src.numerics import UniformGrid
        from src.transform import build_profile

        grid = UniformGrid(4.0, 41)
        f = build_profile({"type": "gaussian", "amplitude": 0.5, "center": 1.0, "width": 0.25}, grid)
        assert np.allclose(f.values, gaussian(grid.nodes, 0.5, 1.0, 0.25))

    def test_step_profile_closed_interval(self):
        """测试: 阶跃剖面包含区间两端节点"""
        from src.numerics import UniformGrid
        from src.transform import build_profile

        grid = UniformGrid(4.0, 41)
        f = build_profile({"type": "step", "height": 2.0, "from": 1.0, "to": 2.0}, grid)
        inside = (grid.nodes >= 1.0 - 1e-9) & (grid.nodes <= 2.0 + 1e-9)
        assert np.count_nonzero(f.values) == np.count_nonzero(inside) == 11
        assert np.all(f.values[inside] == 2.0)

    def test_invalid_profiles(self):
        """测试: 非法剖面报配置错误"""
        from src.numerics import UniformGrid
        from src.transform import build_profile
        from src.errors import ConfigError

        grid = UniformGrid(1.0, 11)
        bad_specs = [
            {"type": "wavelet"},
            {"type": "gaussian", "amplitude": 1.0, "center": 0.5},
            {"type": "gaussian", "amplitude": 1.0, "center": 0.5, "width": 0.0},
            {"type": "step", "height": 1.0, "from": 0.8, "to": 0.2},
            {"type": "samples", "values": [0.0, 1.0]},
            "gaussian",
        ]
        for spec in bad_specs:
            with pytest.raises(ConfigError):
                build_profile(spec, grid)

    def test_problem_from_dict(self):
        """测试: 由问题 JSON 构造问题，参数覆盖 grid 字段"""
        from src.transform import problem_from_dict

        data = {
            "grid": {"x_max": 4.0, "n": 41},
            "u": {"type": "zero"},
            "p": {"type": "gaussian", "amplitude": 0.3, "center": 1.0, "width": 0.5},
            "alpha": 0.25,
        }
        sp = problem_from_dict(data)
        assert sp.grid.n == 41 and sp.alpha == 0.25
        assert problem_from_dict(data, x_max=2.0, n=21).grid.x_max == 2.0

    def test_problem_from_dict_bad_alpha(self):
        """测试: α 越界报配置错误"""
        from src.transform import problem_from_dict
        from src.errors import ConfigError

        with pytest.raises(ConfigError):
            problem_from_dict({"grid": {"x_max": 1.0, "n": 11}, "alpha": 4.0})

    def test_problem_to_dict_reloads(self, make_problem):
        """测试: samples 形式的问题 JSON 可以重新加载"""
        from src.transform import problem_from_dict, problem_to_dict

        sp = make_problem(alpha=0.4, n=65)
        again = problem_from_dict(problem_to_dict(sp))
        assert again.grid.same_as(sp.grid)
        assert np.array_equal(again.u.values, sp.u.values)
        assert again.alpha == sp.alpha
