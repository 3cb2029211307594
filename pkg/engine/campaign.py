import asyncio  # 并发执行支持
import logging  # 标准日志
import math  # 有限性判断
from typing import Any, Dict, List, Optional, Sequence, Tuple  # 类型工具

import numpy as np  # 汇总统计
from pydantic import BaseModel, ConfigDict  # 报告模型

from config.settings import DEFAULT_SETTINGS, Settings  # 容差与并发度
from engine.generator import GeneratorConfig, generate_case  # 实例生成
from engine.search import CircleGrid  # 圆周网格
from engine.verifier import VerificationReport, verify_theorem  # 单次验证
from theorems.base import BoundParams, TheoremId  # 定理模型

logger = logging.getLogger(__name__)


class TrialOutcome(BaseModel):
    """单个 (trial, η) 的结果；出错时 report 为空，error 记录信息"""

    model_config = ConfigDict(frozen=True)

    trial: int
    eta_index: int
    eta: float
    report: Optional[VerificationReport] = None
    error: Optional[str] = None


class EtaSummary(BaseModel):
    """按 η 分组的计数"""

    model_config = ConfigDict(frozen=True)

    eta: float
    passed: int
    failed: int
    vacuous: int
    errors: int
    min_slack: Optional[float] = None


class Witness(BaseModel):
    """全局最小 slack 的见证实例（实例文件格式）及其报告"""

    model_config = ConfigDict(frozen=True)

    trial: int
    eta: float
    slack: float
    instance: Dict[str, Any]
    report: VerificationReport


class CampaignReport(BaseModel):
    """fuzz 子命令的载荷；固定种子下逐字节可复现"""

    model_config = ConfigDict(frozen=True)

    theorem: TheoremId
    generator: GeneratorConfig
    grid: CircleGrid
    trials: int
    eta_set: List[float]
    # 最大模型定理的外圈半径
    nu: float = 1.0
    passed: int
    failed: int
    # 假设不满足或全部网格点为空洞点
    vacuous: int
    errors: int
    per_eta: List[EtaSummary]
    min_slack: Optional[float] = None
    mean_slack: Optional[float] = None
    median_slack: Optional[float] = None
    max_slack: Optional[float] = None
    witness: Optional[Witness] = None
    error_messages: List[str] = []


def _classify(outcome: TrialOutcome) -> str:
    if outcome.report is None:
        return "error"
    if outcome.report.status == "hypothesis_unmet":
        return "vacuous"
    if outcome.report.passed and outcome.report.min_observed is None:
        return "vacuous"
    return "passed" if outcome.report.passed else "failed"


def run_trial(
    theorem_id: TheoremId,
    cfg: GeneratorConfig,
    trial: int,
    eta_set: Sequence[float],
    grid: CircleGrid,
    settings: Settings = DEFAULT_SETTINGS,
    nu: float = 1.0,
) -> List[TrialOutcome]:
    """对第 trial 个实例在每个 η 上运行 verify_theorem；异常记入结果而不抛出"""
    outcomes: List[TrialOutcome] = []
    try:
        instance = generate_case(cfg, trial)
    except Exception as exc:  # noqa: BLE001 - 单次试验的失败只计数
        logger.warning("trial %d: instance generation failed: %s", trial, exc)
        return [
            TrialOutcome(trial=trial, eta_index=i, eta=eta, error=f"{type(exc).__name__}: {exc}")
            for i, eta in enumerate(eta_set)
        ]

    for i, eta in enumerate(eta_set):
        params = BoundParams(eta=eta, k=cfg.k, nu=nu)
        try:
            report = verify_theorem(theorem_id, instance, params, grid, settings)
            outcomes.append(TrialOutcome(trial=trial, eta_index=i, eta=eta, report=report))
        except Exception as exc:  # noqa: BLE001
            logger.warning("trial %d eta=%g: %s", trial, eta, exc)
            outcomes.append(
                TrialOutcome(trial=trial, eta_index=i, eta=eta, error=f"{type(exc).__name__}: {exc}")
            )
    return outcomes


def aggregate(
    theorem_id: TheoremId,
    cfg: GeneratorConfig,
    grid: CircleGrid,
    trials: int,
    eta_set: Sequence[float],
    outcomes: Sequence[TrialOutcome],
    nu: float = 1.0,
) -> CampaignReport:
    """与执行顺序无关的汇总：先按 (trial, eta_index) 排序，最小 slack 按 (slack, trial, eta_index) 取"""
    ordered = sorted(outcomes, key=lambda o: (o.trial, o.eta_index))
    counts = {"passed": 0, "failed": 0, "vacuous": 0, "error": 0}
    per_eta: Dict[int, Dict[str, Any]] = {
        i: {"passed": 0, "failed": 0, "vacuous": 0, "error": 0, "slacks": []} for i in range(len(eta_set))
    }
    slacks: List[float] = []
    best: Optional[Tuple[float, int, int, TrialOutcome]] = None
    error_messages: List[str] = []

    for outcome in ordered:
        kind = _classify(outcome)
        counts[kind] += 1
        per_eta[outcome.eta_index][kind] += 1
        if kind == "error":
            error_messages.append(f"trial {outcome.trial} eta={outcome.eta!r}: {outcome.error}")
            continue
        slack = outcome.report.slack
        if slack is None or not math.isfinite(slack):
            continue
        slacks.append(slack)
        per_eta[outcome.eta_index]["slacks"].append(slack)
        key = (slack, outcome.trial, outcome.eta_index, outcome)
        if best is None or key[:3] < best[:3]:
            best = key

    witness: Optional[Witness] = None
    if best is not None:
        slack, trial, _, outcome = best
        witness = Witness(
            trial=trial,
            eta=outcome.eta,
            slack=slack,
            instance=generate_case(cfg, trial).to_document(),
            report=outcome.report,
        )

    summaries = [
        EtaSummary(
            eta=float(eta),
            passed=per_eta[i]["passed"],
            failed=per_eta[i]["failed"],
            vacuous=per_eta[i]["vacuous"],
            errors=per_eta[i]["error"],
            min_slack=min(per_eta[i]["slacks"]) if per_eta[i]["slacks"] else None,
        )
        for i, eta in enumerate(eta_set)
    ]
    values = np.asarray(slacks, dtype=float)
    return CampaignReport(
        theorem=theorem_id,
        generator=cfg,
        grid=grid,
        trials=trials,
        eta_set=[float(e) for e in eta_set],
        nu=float(nu),
        passed=counts["passed"],
        failed=counts["failed"],
        vacuous=counts["vacuous"],
        errors=counts["error"],
        per_eta=summaries,
        min_slack=float(values.min()) if values.size else None,
        mean_slack=float(values.mean()) if values.size else None,
        median_slack=float(np.median(values)) if values.size else None,
        max_slack=float(values.max()) if values.size else None,
        witness=witness,
        error_messages=error_messages,
    )


async def fuzz_campaign_async(
    theorem_id: TheoremId,
    cfg: GeneratorConfig,
    trials: int,
    eta_set: Sequence[float],
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
    workers: Optional[int] = None,
    nu: float = 1.0,
) -> CampaignReport:
    """每个 trial 一个任务并发执行，信号量限制同时运行的数量"""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    theorem_id = TheoremId(theorem_id)
    grid = grid or CircleGrid(points=settings.grid_points, refine_iters=settings.refine_iters)
    semaphore = asyncio.Semaphore(workers or settings.workers)
    logger.info("campaign %s: %d trials x %d etas, seed=%d", theorem_id.value, trials, len(eta_set), cfg.seed)

    async def run_one(trial: int) -> List[TrialOutcome]:
        async with semaphore:
            # CPU 工作放到线程里，事件循环只负责调度
            return await asyncio.to_thread(run_trial, theorem_id, cfg, trial, eta_set, grid, settings, nu)

    tasks = [asyncio.create_task(run_one(trial)) for trial in range(trials)]
    results = await asyncio.gather(*tasks, return_exceptions=False)
    outcomes = [outcome for batch in results for outcome in batch]

    report = aggregate(theorem_id, cfg, grid, trials, eta_set, outcomes, nu)
    logger.info(
        "campaign %s finished: passed=%d failed=%d vacuous=%d errors=%d min_slack=%s",
        theorem_id.value,
        report.passed,
        report.failed,
        report.vacuous,
        report.errors,
        report.min_slack,
    )
    return report


def fuzz_campaign(
    theorem_id: TheoremId,
    cfg: GeneratorConfig,
    trials: int,
    eta_set: Sequence[float],
    grid: Optional[CircleGrid] = None,
    settings: Settings = DEFAULT_SETTINGS,
    workers: Optional[int] = None,
    nu: float = 1.0,
) -> CampaignReport:
    """同步入口"""
    return asyncio.run(fuzz_campaign_async(theorem_id, cfg, trials, eta_set, grid, settings, workers, nu))
