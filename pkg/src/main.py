"""
命令行主入口
正问题、反问题、往返校验与类 𝒮 校验
退出码：0 成功，1 数值阶段失败，2 输入输出或解析失败，3 类 𝒮 校验拒绝
"""

import functools
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional

# 确保src目录在路径中
sys.path.insert(0, str(Path(__file__).parent.parent))

import click

from src.config import Config, RunConfig
from src.direct import scattering_function, symmetric_k_grid, winding_number
from src.errors import ClassSRejection, ConfigError, ScatteringError, TailNotSettledError
from src.phase import InverseScatterer, reconstruction_errors
from src.scatdata import extract_gamma, validate_class_S
from src.storage import (
    ResultStore,
    read_json,
    read_scattering_csv,
    write_json,
    write_reconstruction_csv,
    write_scattering_csv,
)
from src.transform import SchrodingerProblem, problem_from_dict, problem_to_dict, reduce_mod_pi, to_zsakns
from src.utils.logger import get_logger, set_level

# 初始化日志
logger = get_logger("main")

_SETTING_GROUPS = ("grid", "spectral", "tolerances", "inverse")


def load_run_config(
    config_path: Optional[str],
    output: Optional[str],
    flags: Dict[str, Any]
) -> RunConfig:
    """
    组装运行配置：默认值 ← 环境变量 ← 配置文件 ← 命令行参数

    配置文件可以直接是问题 JSON，也可以是
    {"problem": {...}, "grid": {...}, "spectral": {...}, "tolerances": {...}, "inverse": {...}}

    Raises:
        ConfigError: 文件或参数不合法
    """
    settings = Config()
    problem: Optional[Dict[str, Any]] = None

    if config_path:
        data = read_json(config_path, ConfigError)
        if "problem" in data:
            problem = data["problem"]
        elif any(key in data for key in ("u", "p", "alpha")):
            problem = data
        if problem is not None and not isinstance(problem, dict):
            raise ConfigError("problem 字段必须是 JSON 对象")

        overrides = {g: data[g] for g in _SETTING_GROUPS if g in data and data is not problem}
        if problem is not None and isinstance(problem.get("grid"), dict):
            grid_spec = problem["grid"]
            overrides["grid"] = {"x_max": grid_spec.get("x_max"), "n_x": grid_spec.get("n")}
        settings = settings.updated(overrides)

    settings = settings.updated({
        "grid": {"x_max": flags.get("x_max"), "n_x": flags.get("n_x")},
        "spectral": {"k_max": flags.get("k_max"), "n_k": flags.get("n_k")},
        "tolerances": {"roundtrip": flags.get("tol_roundtrip")},
        "inverse": {"n_recon": flags.get("n_recon"), "n_marchenko": flags.get("n_marchenko")},
    }).validate()

    return RunConfig(problem=problem, settings=settings, output_path=Path(output or "."))


def build_problem(run: RunConfig) -> SchrodingerProblem:
    """由运行配置构造薛定谔问题"""
    if run.problem is None:
        raise ConfigError("配置文件中缺少问题定义（u / p / alpha）")
    return problem_from_dict(run.problem, x_max=run.x_max, n=run.n_x)


def common_options(fn):
    """各子命令共用的参数"""
    options = [
        click.option("--config", "config_path", type=click.Path(), default=None, help="JSON 配置文件"),
        click.option("--output", type=click.Path(), default=None, help="输出目录或文件前缀"),
        click.option("--k-max", type=float, default=None, help="k 网格半宽"),
        click.option("--n-k", type=int, default=None, help="k 网格节点数（偶数）"),
        click.option("--x-max", type=float, default=None, help="截断长度"),
        click.option("--n-x", type=int, default=None, help="空间网格节点数"),
        click.option("--tol-roundtrip", type=float, default=None, help="往返校验的相对 L² 容差"),
        click.option("--n-recon", type=int, default=None, help="重构网格节点数"),
        click.option("--n-marchenko", type=int, default=None, help="Nyström 节点数"),
        click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]), default=None),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def handle_errors(fn):
    """把异常映射为退出码"""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if kwargs.get("log_level"):
            set_level(kwargs["log_level"])
        try:
            return fn(*args, **kwargs)
        except ScatteringError as e:
            logger.error(f"运行失败: {e}")
            click.echo(f"错误: {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _run_forward(run: RunConfig, sp: SchrodingerProblem):
    """正问题，返回 (ZS-AKNS 问题, 散射采样)"""
    try:
        zp = to_zsakns(sp, run.tolerances.tail_mass_ratio)
        samples = scattering_function(zp, symmetric_k_grid(run.k_max, run.n_k), run.tolerances.denominator)
    except ScatteringError as e:
        raise e.with_stage("forward")
    return zp, samples


@click.group()
def cli():
    """能量依赖薛定谔方程半轴散射：正问题与反问题"""


@cli.command()
@common_options
@handle_errors
def forward(config_path, output, log_level, **flags):
    """由问题定义计算散射函数 S(k)"""
    run = load_run_config(config_path, output, flags)
    sp = build_problem(run)
    zp, samples = _run_forward(run, sp)

    try:
        winding = winding_number(samples, run.tolerances.phase_step, run.tolerances.limit_gap)
    except ScatteringError as e:
        raise e.with_stage("forward")
    try:
        gamma = extract_gamma(samples, run.settings.inverse.band_fraction, run.tolerances.tail_spread).gamma
    except TailNotSettledError as e:
        logger.warning(e.message)
        gamma = None

    store = ResultStore(output, "scattering")
    store.ensure_dir()
    write_scattering_csv(store.path(".csv"), samples)
    write_json(store.path(".json"), {
        "alpha": sp.alpha,
        "beta": zp.beta,
        "p0": zp.p0,
        "gamma_estimate": gamma,
        "gamma_expected": reduce_mod_pi(zp.beta + math.pi / 2),
        "max_unimodularity_deviation": samples.max_unimodularity_deviation,
        "ratio_s_gap": samples.ratio_gap,
        "winding": winding.winding,
        "winding_raw": winding.raw,
        "limit_gap": winding.limit_gap,
        "masked_nodes": list(samples.masked),
        "tail_mass": sp.tail_mass,
        "problem": run.problem,
        "config": run.settings.to_dict(),
    })
    click.echo(f"散射函数已写入 {store.path('.csv')}，绕数 {winding.winding}")


@cli.command()
@click.argument("s_file", type=click.Path())
@common_options
@handle_errors
def inverse(s_file, config_path, output, log_level, **flags):
    """由散射数据 CSV 重构 (u, p, α)"""
    run = load_run_config(config_path, output, flags)
    samples = read_scattering_csv(s_file)
    store = ResultStore(output, "reconstruction")
    store.ensure_dir()

    try:
        result = InverseScatterer(run.settings).run(samples)
    except ClassSRejection as e:
        write_json(store.path(".meta.json"), {"status": "rejected", "validation_report": e.report_dict()})
        raise

    write_reconstruction_csv(store.path(".csv"), result)
    metadata = result.metadata()
    metadata["config"] = run.settings.to_dict()
    write_json(store.path(".meta.json"), metadata)
    write_json(store.path(".problem.json"), problem_to_dict(result.as_problem()))
    click.echo(f"重构结果已写入 {store.path('.csv')}，α={result.alpha:.8f}")


@cli.command()
@common_options
@handle_errors
def roundtrip(config_path, output, log_level, **flags):
    """正问题 → 反问题，报告重构误差"""
    run = load_run_config(config_path, output, flags)
    sp = build_problem(run)
    store = ResultStore(output, "run")
    store.ensure_dir()
    report_path = store.path(".roundtrip.json")

    _, samples = _run_forward(run, sp)
    try:
        result = InverseScatterer(run.settings).run(samples)
    except ClassSRejection as e:
        write_json(report_path, {"status": "rejected", "validation_report": e.report_dict()})
        raise

    errors = reconstruction_errors(sp, result)
    tol = run.tolerances
    passed = (
        errors["u_relative_l2"] <= tol.roundtrip
        and errors["p_relative_l2"] <= tol.roundtrip
        and errors["alpha_error"] <= tol.alpha
    )
    report = {
        "status": "passed" if passed else "failed",
        "errors": errors,
        "tolerances": {"roundtrip": tol.roundtrip, "alpha": tol.alpha},
        "alpha": {"original": sp.alpha, "recovered": result.alpha},
        "forward": {
            "max_unimodularity_deviation": samples.max_unimodularity_deviation,
            "masked_nodes": len(samples.masked),
        },
        "inverse": result.metadata(),
        "config": run.settings.to_dict(),
    }
    write_json(report_path, report)
    click.echo(json.dumps({"status": report["status"], **errors}, ensure_ascii=False))
    if not passed:
        logger.error(f"往返误差超出容差: {errors}")
        sys.exit(1)


@cli.command()
@click.argument("s_file", type=click.Path())
@common_options
@handle_errors
def validate(s_file, config_path, output, log_level, **flags):
    """校验散射数据是否属于类 𝒮"""
    run = load_run_config(config_path, output, flags)
    samples = read_scattering_csv(s_file)
    report = validate_class_S(
        samples,
        run.tolerances,
        zeta_max=2.0 * run.x_max,
        n_zeta=run.settings.spectral.n_zeta,
        band_fraction=run.settings.inverse.band_fraction,
        tail_correction=run.settings.inverse.tail_correction,
    ).to_dict()

    text = json.dumps(report, indent=2, ensure_ascii=False)
    click.echo(text)
    if output:
        store = ResultStore(output, "validation")
        store.ensure_dir()
        write_json(store.path(".report.json"), report)
    if not report["passed"]:
        sys.exit(ClassSRejection.exit_code)


if __name__ == "__main__":
    cli()
