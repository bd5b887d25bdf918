import hashlib
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from .analyzers.moments import MomentsAnalyzer
from .analyzers.survival import BivariateWeibull
from .config import settings
from .data.loader import load_dataset, write_csv
from .estimation.fitter import FitConfig, fit, independence_test
from .exceptions import TermSurvError
from .logging_config import configure_logging
from .models.params import PARAM_NAMES, ModelParams
from .models.reports import RunReport, VerificationReport
from .simulation.sampler import (
    MIN_MC_DRAWS,
    StudyDesign,
    expected_category_proportions,
    generate_dataset,
    mc_tail_prob,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CONVERGED = 2

# 꼬리확률 교차 검증 기준
QUADRATURE_AGREEMENT = 1e-6
MC_SIGMAS = 3.0

app = typer.Typer(
    name="termsurv",
    help="종결 사건이 있는 이변량 Weibull 경쟁위험 모형 적합 및 검증",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="DEBUG 로깅"),
    log_file: Optional[Path] = typer.Option(None, "--log-file", help="로그 파일 경로"),
) -> None:
    """공통 로깅 설정"""
    level = "DEBUG" if verbose else settings.LOG_LEVEL
    configure_logging(level=level, log_file=str(log_file) if log_file else settings.LOG_FILE)


def _digest(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


def _command_echo() -> str:
    return " ".join(["termsurv"] + sys.argv[1:])


def _run(body: Callable[[], int]) -> None:
    """라이브러리 예외를 종료 코드 1 과 stderr 메시지로 변환"""
    try:
        code = body()
    except (TermSurvError, ValidationError, ValueError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        err_console.print(f"[red]error:[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_INPUT_ERROR)
    raise typer.Exit(code)


def _emit(report: BaseModel, out: Optional[Path], json_only: bool, table: Optional[Table]) -> None:
    text = report.model_dump_json(indent=2)
    if out is not None:
        out.write_text(text + "\n", encoding="utf-8")
    if json_only:
        typer.echo(text)
    elif table is not None:
        console.print(table)


def _params_table(title: str, values, errors=None) -> Table:
    table = Table(title=title)
    table.add_column("Parameter")
    table.add_column("Estimate", justify="right")
    if errors is not None:
        table.add_column("Std. Error", justify="right")
    for i, name in enumerate(PARAM_NAMES):
        row = [name, f"{values[i]:.6g}"]
        if errors is not None:
            row.append(f"{errors[i]:.6g}")
        table.add_row(*row)
    return table


@app.command("fit")
def cmd_fit(
    data: Path = typer.Option(..., "--data", help="정규 스키마 CSV"),
    out: Path = typer.Option(..., "--out", help="JSON 보고서 경로"),
    init: Optional[str] = typer.Option(None, "--init", help="α,λ1,γ1,λ2,γ2 초기값"),
    restarts: Optional[int] = typer.Option(None, "--restarts"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    r_factor: Optional[str] = typer.Option(None, "--r-factor", help="marginal | sub_density"),
    censored_factor: Optional[str] = typer.Option(None, "--censored-factor", help="tail | joint_survival"),
    json_only: bool = typer.Option(False, "--json-only"),
) -> None:
    """최대우도 적합, 헤시안 표준오차, 독립성 우도비 검정"""
    def body() -> int:
        started = time.perf_counter()
        content = data.read_bytes()
        dataset, cleaning = load_dataset(data)

        overrides = {}
        if init is not None:
            overrides["init"] = ModelParams.parse(init)
        if restarts is not None:
            overrides["restarts"] = restarts
        if seed is not None:
            overrides["seed"] = seed
        if r_factor is not None:
            overrides["r_factor"] = r_factor
        if censored_factor is not None:
            overrides["censored_factor"] = censored_factor
        cfg = FitConfig(**overrides)

        result = fit(dataset, cfg)
        lrt = independence_test(dataset, result, cfg=cfg.model_copy(update={"std_errors": False}))

        report = RunReport(
            command=_command_echo(),
            input_digest=_digest(content),
            version=__version__,
            elapsed_seconds=time.perf_counter() - started,
            seed=cfg.seed,
            counts=dataset.counts,
            cleaning=cleaning,
            fit=result,
            independence_lrt=lrt,
        )
        table = _params_table(
            f"loglik = {result.loglik:.4f}, converged = {result.converged}",
            result.estimate.as_array(),
            result.std_errors,
        )
        _emit(report, out, json_only, table)

        if not result.converged:
            err_console.print("[yellow]optimizer did not converge[/yellow]")
            return EXIT_NOT_CONVERGED
        return EXIT_OK

    _run(body)


@app.command("simulate")
def cmd_simulate(
    params: str = typer.Option(..., "--params", help="α,λ1,γ1,λ2,γ2"),
    n: int = typer.Option(..., "--n"),
    end_time: float = typer.Option(..., "--end-time"),
    seed: int = typer.Option(..., "--seed"),
    out: Path = typer.Option(..., "--out", help="CSV 출력 경로"),
    censor_uniform: Optional[str] = typer.Option(None, "--censor-uniform", help="LOW,HIGH 균등 최종 관찰 시점"),
) -> None:
    """종결 사건 관측 체계로 데이터 생성 (같은 seed 면 같은 출력)"""
    def body() -> int:
        theta = ModelParams.parse(params)
        uniform = None
        if censor_uniform is not None:
            low, high = (float(v) for v in censor_uniform.split(","))
            uniform = (low, high)
        design = StudyDesign(n_subjects=n, end_time=end_time, censor_uniform=uniform)

        try:
            expected = expected_category_proportions(theta, design)
            logger.info("예상 범주 비율: %s", {k: round(v, 4) for k, v in expected.items()})
        except TermSurvError as e:
            logger.warning("예상 범주 비율 계산 실패: %s", e)

        dataset = generate_dataset(theta, design, np.random.default_rng(seed))
        write_csv(dataset, out)
        logger.info("생성 범주 개수: %s", dataset.counts)
        return EXIT_OK

    _run(body)


@app.command("moments")
def cmd_moments(
    params: str = typer.Option(..., "--params", help="α,λ1,γ1,λ2,γ2"),
    out: Optional[Path] = typer.Option(None, "--out"),
    json_only: bool = typer.Option(False, "--json-only"),
) -> None:
    """평균, 분산, 상관계수"""
    def body() -> int:
        started = time.perf_counter()
        theta = ModelParams.parse(params)
        moments = MomentsAnalyzer.report(theta)
        report = RunReport(
            command=_command_echo(),
            input_digest=_digest(params.encode("utf-8")),
            version=__version__,
            elapsed_seconds=time.perf_counter() - started,
            moments=moments,
        )

        table = Table(title="Moments")
        table.add_column("Quantity")
        table.add_column("Value", justify="right")
        for label, value in [
            ("E(X)", moments.mean_x),
            ("E(Y)", moments.mean_y),
            ("Var(X)", moments.var_x),
            ("Var(Y)", moments.var_y),
            ("Corr(X, Y)", moments.corr_xy),
            ("Corr(X, Y) closed form", moments.corr_closed_form),
            ("Kendall tau", moments.kendall_tau),
        ]:
            table.add_row(label, f"{value:.6f}")
        _emit(report, out, json_only, table)
        return EXIT_OK

    _run(body)


def verify_tail(theta: ModelParams, t: float, draws: int, seed: int) -> VerificationReport:
    """꼬리확률: 단일 적분, 직접 이중적분, 몬테카를로 비교"""
    tail = BivariateWeibull.tail_prob(t, theta)
    double = BivariateWeibull.tail_prob_by_double_integral(t, theta)
    quadrature_pass = abs(tail - double) <= QUADRATURE_AGREEMENT
    notes = []

    mc_estimate = mc_std_error = None
    mc_pass = False
    if draws < MIN_MC_DRAWS:
        notes.append(f"insufficient draws: {draws} < {MIN_MC_DRAWS}, Monte-Carlo check skipped")
    else:
        mc_estimate, mc_std_error = mc_tail_prob(t, theta, draws, np.random.default_rng(seed))
        mc_pass = abs(tail - mc_estimate) <= MC_SIGMAS * max(mc_std_error, 1.0 / draws)

    if not quadrature_pass:
        notes.append(f"single vs double quadrature differ by {abs(tail - double):.3e}")

    return VerificationReport(
        params=theta,
        t=t,
        tail_prob=tail,
        double_quadrature=double,
        mc_estimate=mc_estimate,
        mc_std_error=mc_std_error,
        draws=draws,
        seed=seed,
        quadrature_pass=quadrature_pass,
        mc_pass=mc_pass,
        passed=quadrature_pass and mc_pass,
        notes=notes,
    )


@app.command("verify")
def cmd_verify(
    params: str = typer.Option(..., "--params", help="α,λ1,γ1,λ2,γ2"),
    t: float = typer.Option(100.0, "--t"),
    draws: int = typer.Option(..., "--draws"),
    seed: int = typer.Option(..., "--seed"),
    out: Optional[Path] = typer.Option(None, "--out"),
    json_only: bool = typer.Option(False, "--json-only"),
) -> None:
    """Pr(t < X < Y) 교차 검증"""
    def body() -> int:
        started = time.perf_counter()
        theta = ModelParams.parse(params)
        verification = verify_tail(theta, t, draws, seed)
        report = RunReport(
            command=_command_echo(),
            input_digest=_digest(f"{params}|{t}".encode("utf-8")),
            version=__version__,
            elapsed_seconds=time.perf_counter() - started,
            seed=seed,
            verification=verification,
        )

        table = Table(title=f"Pr({t:g} < X < Y)")
        table.add_column("Method")
        table.add_column("Value", justify="right")
        table.add_row("quadrature", f"{verification.tail_prob:.10f}")
        table.add_row("double quadrature", f"{verification.double_quadrature:.10f}")
        if verification.mc_estimate is not None:
            table.add_row("Monte Carlo", f"{verification.mc_estimate:.6f} ± {verification.mc_std_error:.6f}")
        table.add_row("result", "PASS" if verification.passed else "FAIL")
        _emit(report, out, json_only, table)
        for note in verification.notes:
            err_console.print(f"[yellow]{note}[/yellow]")

        return EXIT_OK if verification.passed else EXIT_NOT_CONVERGED

    _run(body)


if __name__ == "__main__":
    app()
