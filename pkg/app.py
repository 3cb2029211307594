import argparse  # 命令行解析
import logging  # 标准日志
import math  # 扫描步数
import sys  # 标准输出 / 退出码
from pathlib import Path  # 输出路径
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple  # 类型标注

import yaml  # 实例文件解析错误
from pydantic import ValidationError  # 参数校验错误

from algebra.errors import HypothesisUnmet, RatgrowError  # 领域错误
from algebra.instance import Instance  # 实例
from algebra.polynomial import poly_from_roots, to_complex  # 缺省多项式
from config.loader import load_instance, save_config  # 实例文件读写
from config.settings import Settings, configure_logging, env_seed  # 配置与日志
from engine.analysis import (  # 比较 / 极限 / 锐度
    DEFAULT_BETA_MODULI,
    ExtremalFamily,
    FamilyKind,
    compare_factors,
    limit_recovery_sweep,
    sharpness_check,
)
from engine.campaign import fuzz_campaign  # 随机搜索
from engine.generator import GeneratorConfig  # 实例生成配置
from engine.proof_steps import run_lemma_checks  # 引理扫描
from engine.search import CircleGrid  # 圆周网格
from engine.verifier import verify_theorem  # 单实例验证
from theorems.base import BoundParams, TheoremId  # 定理模型
from tools import FORMATTERS  # 输出格式注册表
from tools.report_tools import make_envelope, serialize_report  # 报告信封

logger = logging.getLogger(__name__)

# 退出码
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3

THEOREM_TAGS = [t.value for t in TheoremId]
# fuzz 缺省 η 集合 {0, 0.1, …, 1}
DEFAULT_ETA_SET = [i / 10 for i in range(11)]
# compare 缺省比较两条排序链
DEFAULT_COMPARE = ["t1", "tI", "tG", "t2", "tJ", "tH"]
# 不写入配置回显的键（输出路径不影响载荷）
_ECHO_EXCLUDED = {"handler", "out", "witness_out", "no_timestamp", "format"}


def _eta(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid eta value: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"eta must lie in [0, 1], got {text}")
    return value


def _sweep(text: str) -> List[float]:
    """start:stop:step，两端包含"""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"sweep must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid sweep: {text!r}")
    if step <= 0.0:
        raise argparse.ArgumentTypeError(f"sweep step must be positive, got {step}")
    if stop < start:
        raise argparse.ArgumentTypeError(f"sweep stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(count)]
    for value in values:
        if not 0.0 <= value <= 1.0 + 1e-12:
            raise argparse.ArgumentTypeError(f"sweep value {value} outside [0, 1]")
    return [min(v, 1.0) for v in values]


def _complex(text: str) -> complex:
    """re,im 或单个实数"""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return to_complex(float(parts[0]))
        if len(parts) == 2:
            return to_complex([float(parts[0]), float(parts[1])])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="settings file (YAML / JSON)")
    p.add_argument("--format", choices=sorted(FORMATTERS), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit the report timestamp")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=int, help="grid points on the circle (>= 16)")
    p.add_argument("--refine-iters", type=int, help="golden-section iterations")


def _add_etas(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--eta", type=_eta, action="append", help="repeatable")
    group.add_argument("--eta-sweep", type=_sweep, help="start:stop:step")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratgrow", description="Growth bounds for polynomials and rational functions with prescribed poles"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", help="verify one theorem on an instance")
    p.add_argument("--theorem", choices=THEOREM_TAGS, required=True)
    p.add_argument("--instance", required=True)
    _add_etas(p)
    p.add_argument("--k", type=float)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--pole-margin", type=float)
    _add_grid(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("fuzz", help="seeded random search for counterexamples")
    p.add_argument("--theorem", choices=THEOREM_TAGS, required=True)
    _add_etas(p)
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--n-max", type=_positive_int)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--root-modulus-max", type=float, default=5.0)
    p.add_argument("--pole-margin", type=float)
    p.add_argument("--pole-modulus-max", type=float, default=10.0)
    p.add_argument("--workers", type=_positive_int)
    p.add_argument("--witness-out", help="write the minimum-slack instance here")
    _add_grid(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_fuzz)

    p = sub.add_parser("compare", help="factor table and ordering checks")
    p.add_argument("--theorem", choices=THEOREM_TAGS, action="append", help="repeatable")
    p.add_argument("--instance", required=True)
    _add_etas(p)
    p.add_argument("--k", type=float)
    p.add_argument("--nu", type=float, default=1.0)
    _add_output(p)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("sharpness", help="equality on an extremal family")
    p.add_argument("--theorem", choices=THEOREM_TAGS, required=True)
    p.add_argument("--family", choices=[f.value for f in FamilyKind], required=True)
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--eta", type=_eta, default=0.0)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=1.0)
    for name in ("--zeta", "--gamma", "--a", "--b", "--lam"):
        p.add_argument(name, type=_complex, help="re,im")
    _add_grid(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_sharpness)

    p = sub.add_parser("limit", help="recover the polynomial bound as |beta| grows")
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--eta", type=_eta, default=0.5)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--beta-modulus", type=float, action="append", help="repeatable")
    p.add_argument("--instance", help="take the numerator from this instance")
    _add_grid(p)
    _add_output(p)
    p.set_defaults(handler=_cmd_limit)

    p = sub.add_parser("lemmas", help="randomized lemma and proof-step sweeps")
    p.add_argument("--samples", type=_positive_int, default=10000)
    p.add_argument("--seed", type=int)
    _add_output(p)
    p.set_defaults(handler=_cmd_lemmas)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.load(args.config)
    update: Dict[str, Any] = {}
    if getattr(args, "grid", None) is not None:
        update["grid_points"] = args.grid
    if getattr(args, "refine_iters", None) is not None:
        update["refine_iters"] = args.refine_iters
    if getattr(args, "pole_margin", None) is not None:
        update["pole_margin"] = args.pole_margin
    if getattr(args, "workers", None) is not None:
        update["workers"] = args.workers
    # model_copy 不做校验，重新构造一次
    return Settings(**{**settings.model_dump(), **update}) if update else settings


def _grid(settings: Settings) -> CircleGrid:
    return CircleGrid(points=settings.grid_points, refine_iters=settings.refine_iters)


def _etas(args: argparse.Namespace, default: Sequence[float]) -> List[float]:
    if getattr(args, "eta_sweep", None):
        return list(args.eta_sweep)
    if getattr(args, "eta", None):
        return list(args.eta)
    return list(default)


def _seed(args: argparse.Namespace) -> int:
    """--seed > RATGROW_SEED > 0"""
    if args.seed is not None:
        return args.seed
    from_env = env_seed()
    return 0 if from_env is None else from_env


def _instance_k(args: argparse.Namespace, instance: Instance) -> float:
    if args.k is not None:
        return args.k
    return 1.0 if instance.k is None else instance.k


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    instance = load_instance(args.instance)
    theorem_id = TheoremId(args.theorem)
    k = _instance_k(args, instance)
    reports = [
        verify_theorem(theorem_id, instance, BoundParams(eta=eta, k=k, nu=args.nu), _grid(settings), settings)
        for eta in _etas(args, [0.0])
    ]
    statuses = {r.status for r in reports}
    code = EXIT_FAILURE if "fail" in statuses else EXIT_HYPOTHESIS if "hypothesis_unmet" in statuses else EXIT_OK
    return (reports[0] if len(reports) == 1 else reports), code


def _cmd_fuzz(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    cfg = GeneratorConfig(
        n=args.n,
        n_max=args.n_max,
        k=args.k,
        root_modulus_max=args.root_modulus_max,
        pole_margin=settings.pole_margin,
        pole_modulus_max=args.pole_modulus_max,
        seed=_seed(args),
    )
    eta_set = _etas(args, DEFAULT_ETA_SET)
    report = fuzz_campaign(
        TheoremId(args.theorem), cfg, args.trials, eta_set, _grid(settings), settings, nu=args.nu
    )
    if args.witness_out:
        if report.witness is None:
            logger.warning("no finite slack observed; witness file not written")
        else:
            save_config(report.witness.instance, args.witness_out)
    return report, EXIT_FAILURE if report.failed else EXIT_OK


def _cmd_compare(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    instance = load_instance(args.instance)
    ids = [TheoremId(t) for t in (args.theorem or DEFAULT_COMPARE)]
    params = BoundParams(k=_instance_k(args, instance), nu=args.nu)
    table = compare_factors(ids, instance, _etas(args, DEFAULT_ETA_SET), params, settings)
    return table, EXIT_OK if table.passed else EXIT_FAILURE


def _cmd_sharpness(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    values = {name: getattr(args, name) for name in ("zeta", "gamma", "a", "b", "lam")}
    family = ExtremalFamily(family=FamilyKind(args.family), **{k: v for k, v in values.items() if v is not None})
    params = BoundParams(eta=args.eta, k=args.k, nu=args.nu)
    report = sharpness_check(family, TheoremId(args.theorem), params, args.n, _grid(settings), settings)
    return report, EXIT_OK if report.equality else EXIT_FAILURE


def _cmd_limit(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    if args.instance:
        instance = load_instance(args.instance)
        n, poly = instance.n, instance.numerator
    else:
        # 缺省取 (z + k)ⁿ
        n, poly = args.n, poly_from_roots(1.0, [-args.k] * args.n)
    report = limit_recovery_sweep(
        n, args.eta, args.k, poly, args.beta_modulus or DEFAULT_BETA_MODULI, _grid(settings), settings
    )
    return report, EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_lemmas(args: argparse.Namespace, settings: Settings) -> Tuple[Any, int]:
    summary = run_lemma_checks(args.samples, _seed(args), settings)
    return summary, EXIT_OK if summary.passed else EXIT_FAILURE


def _echo(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _ECHO_EXCLUDED}


def _emit(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()


def run_cli(argv: Optional[Sequence[str]] = None, configure: bool = False) -> int:
    """解析参数、执行子命令、写出报告，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse 已把出错的选项写到 stderr
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    handler: Callable[[argparse.Namespace, Settings], Tuple[Any, int]] = args.handler
    try:
        settings = _settings(args)
        if configure:
            configure_logging(settings.log_level)
        payload, code = handler(args, settings)
    except HypothesisUnmet as exc:
        print(f"ratgrow: hypothesis unmet: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (RatgrowError, ValidationError, FileNotFoundError, yaml.YAMLError, ValueError) as exc:
        print(f"ratgrow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    envelope = make_envelope(args.subcommand, payload, _echo(args), timestamp=not args.no_timestamp)
    _emit(serialize_report(envelope, args.format), args.out)
    return code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:], configure=True))


if __name__ == "__main__":
    main()
