"""命令行子命令：simulate / table / mi-curve / detect"""
import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, TextIO

import numpy as np

from analysis.detection import character_report, cycle_report
from analysis.estimators import simulate_joint_estimate, simulate_mi_estimate
from analysis.information import crossover, disturbance, iab_closed_form, iae_closed_form
from analysis.tables import BasisConfig, joint_distribution_closed_form, table_rows
from config import APP_VERSION, Settings
from protocol.session import SessionConfig, derive_seed, run_session
from protocol.sifting import sift
from utils.common import global_performance_monitor
from utils.data_validator import DataValidator
from utils.formatter import format_detection_report, format_sift_summary

from .output import FORMATS, RunManifest, write_csv, write_manifest, write_transcript

logger = logging.getLogger('mbqkd')

TABLE_HEADER = ('j', 'k', 'm', 'closed_form', 'monte_carlo', 'stderr')
CURVE_HEADER = ('x', 'i_ab', 'i_ae')
CURVE_MC_HEADER = ('i_ab_mc', 'i_ab_stderr', 'i_ae_mc', 'i_ae_stderr')


@contextmanager
def _output_stream(out: Optional[Path]) -> Iterator[TextIO]:
    if out is None:
        yield sys.stdout
        return
    with open(out, 'w', encoding='utf-8', newline='\n') as f:
        yield f


def _resolve_seed(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else Settings().DEFAULT_SEED
    return DataValidator.validate_seed(seed)


def _save_manifest(command: str, args: argparse.Namespace, seed: int, duration: float):
    if args.out is None:
        return
    config = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items() if k != 'handler'}
    config['seed'] = seed
    write_manifest(RunManifest(command=command, config=config, seed=seed,
                               version=APP_VERSION, duration_seconds=duration), args.out)


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    config = SessionConfig(
        n_rounds=DataValidator.validate_non_negative_int(args.rounds, "--rounds"),
        eve_presence=DataValidator.validate_probability(args.eve_presence, "--eve-presence"),
        attack_enabled=args.attack == 'on',
        seed=seed,
    )

    with global_performance_monitor.measure('simulate') as timing:
        transcript = run_session(config, Settings().PROGRESS_INTERVAL)
        result = sift(transcript)
        if args.out is not None:
            write_transcript(transcript, args.out, args.format)

    _save_manifest('simulate', args, seed, timing['duration'])
    sys.stdout.write(format_sift_summary(result, config.n_rounds))
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    basis_config = BasisConfig.from_table_number(args.which)
    x = DataValidator.validate_probability(args.x, "--x")
    rounds = DataValidator.validate_positive_int(args.rounds, "--rounds") if args.rounds is not None else None

    with global_performance_monitor.measure('table') as timing:
        closed = joint_distribution_closed_form(x, basis_config)
        estimate = simulate_joint_estimate(x, basis_config, rounds, seed) if rounds else None

        rows = []
        for j, k, m, value in table_rows(closed):
            mc = estimate.distribution.entry(j, k, m) if estimate else None
            se = estimate.entry_stderr(j, k, m) if estimate else None
            rows.append((j, 'none' if k is None else k, m, value, mc, se))

        with _output_stream(args.out) as stream:
            write_csv(stream, TABLE_HEADER, rows)

    _save_manifest('table', args, seed, timing['duration'])
    return 0


def cmd_mi_curve(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    x_start, x_end, steps = DataValidator.validate_x_range(args.x_start, args.x_end, args.steps)
    rounds = DataValidator.validate_positive_int(args.rounds, "--rounds") if args.rounds is not None else None
    grid = np.linspace(x_start, x_end, steps + 1)

    with global_performance_monitor.measure('mi-curve') as timing:
        header = CURVE_HEADER + (CURVE_MC_HEADER if rounds else ())
        rows = []
        for index, x in enumerate(grid):
            x = float(x)
            row = [x, iab_closed_form(x), iae_closed_form(x)]
            if rounds:
                report = simulate_mi_estimate(x, rounds, derive_seed(seed, index), Settings().BOOTSTRAP_SAMPLES)
                row += [report.i_ab_estimate, report.i_ab_stderr, report.i_ae_estimate, report.i_ae_stderr]
            rows.append(row)

        with _output_stream(args.out) as stream:
            write_csv(stream, header, rows)

    x_star = crossover()
    logger.info(f"📐 I_AB 与 I_AE 的交叉点 X* = {x_star:.6f}, 对应扰动 D = {disturbance(x_star):.6f}")
    _save_manifest('mi-curve', args, seed, timing['duration'])
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    x = DataValidator.validate_probability(args.eve_presence, "--eve-presence")
    trials = DataValidator.validate_positive_int(args.rounds, "--rounds") if args.rounds is not None else None

    with global_performance_monitor.measure('detect') as timing:
        if args.cycles is not None:
            cycles = DataValidator.validate_non_negative_int(args.cycles, "--cycles")
            report = cycle_report(cycles, x, trials, seed)
        else:
            characters = DataValidator.validate_non_negative_int(args.characters, "--characters")
            report = character_report(characters, x, trials, seed)

        with _output_stream(args.out) as stream:
            stream.write(format_detection_report(report))

    _save_manifest('detect', args, seed, timing['duration'])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='mbqkd',
        description='混合基双量子比特 QKD 协议模拟与安全分析',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {APP_VERSION}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add_common(sub: argparse.ArgumentParser):
        sub.add_argument('--seed', type=int, default=None, help='随机种子（缺省取 MBQKD_SEED）')
        sub.add_argument('--out', type=Path, default=None, help='输出文件（缺省写到标准输出）')

    simulate = subparsers.add_parser('simulate', help='运行完整会话并写出记录')
    simulate.add_argument('--rounds', type=int, required=True)
    simulate.add_argument('--eve-presence', type=float, default=0.0)
    simulate.add_argument('--attack', choices=('on', 'off'), default='on')
    simulate.add_argument('--format', choices=FORMATS, default=None, help='缺省按 --out 后缀推断')
    add_common(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    table = subparsers.add_parser('table', help='输出联合概率表（1: 无 HWP，2: 两端都有 HWP）')
    table.add_argument('--which', type=int, choices=(1, 2), required=True)
    table.add_argument('--x', type=float, required=True)
    table.add_argument('--rounds', type=int, default=None, help='蒙特卡洛轮数')
    add_common(table)
    table.set_defaults(handler=cmd_table)

    curve = subparsers.add_parser('mi-curve', help='输出 I_AB(X) 与 I_AE(X) 曲线')
    curve.add_argument('--x-start', type=float, default=0.0)
    curve.add_argument('--x-end', type=float, default=1.0)
    curve.add_argument('--steps', type=int, default=100, help='区间数，输出 steps+1 行')
    curve.add_argument('--rounds', type=int, default=None, help='每个 x、每种基配置的蒙特卡洛轮数')
    add_common(curve)
    curve.set_defaults(handler=cmd_mi_curve)

    detect = subparsers.add_parser('detect', help='控制模式下 Eve 的逃逸概率')
    target = detect.add_mutually_exclusive_group(required=True)
    target.add_argument('--cycles', type=int)
    target.add_argument('--characters', type=int)
    detect.add_argument('--rounds', type=int, default=None, help='蒙特卡洛试验次数')
    detect.add_argument('--eve-presence', type=float, default=1.0)
    add_common(detect)
    detect.set_defaults(handler=cmd_detect)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.debug(f"▶️ 执行命令 {args.command}")
    return args.handler(args)
