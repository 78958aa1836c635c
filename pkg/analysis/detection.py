"""控制模式下 Eve 逃过检测的概率：闭式与蒙特卡洛"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import binomtest

from devices.encoder import EncoderAction
from protocol.session import BasisChoice, RoundKind, RoundPlan, SessionConfig, round_rng, run_round, run_rounds
from protocol.sifting import is_bitflip
from utils.data_validator import DataValidator

logger = logging.getLogger('mbqkd')

# 每个完整周期：两条 Bell 消息必然逃过，χ³/χ⁴ 各以 1 − X/4 逃过
CYCLE_ACTIONS = (
    EncoderAction.IDENTITY,
    EncoderAction.HWP0,
    EncoderAction.MEASURE_REPLACE,
    EncoderAction.MEASURE_REPLACE,
)
CONTROL_PLAN_BASES = dict(alice_basis=BasisChoice.PLAIN, bob_basis=BasisChoice.HADAMARD)
PER_CHARACTER_CONSTANT = (0.53 / 1.54) ** 8
KEY_SYMBOLS_PER_CHARACTER = 4
CONFIDENCE_LEVEL = 0.95


@dataclass(frozen=True)
class EscapeEstimate:
    escaped: int
    trials: int
    probability: float
    stderr: float
    ci_low: float
    ci_high: float

    @classmethod
    def from_counts(cls, escaped: int, trials: int) -> 'EscapeEstimate':
        p = escaped / trials
        interval = binomtest(escaped, trials).proportion_ci(confidence_level=CONFIDENCE_LEVEL, method='wilson')
        return cls(
            escaped=escaped,
            trials=trials,
            probability=p,
            stderr=float(np.sqrt(p * (1 - p) / trials)),
            ci_low=float(interval.low),
            ci_high=float(interval.high),
        )


@dataclass(frozen=True)
class DetectionReport:
    mode: str
    count: int
    x: float
    closed_form: float
    model_closed_form: Optional[float] = None
    estimate: Optional[EscapeEstimate] = None


def detection_escape_probability(n_cycles: int, x: float = 1.0) -> float:
    """连续 n 个完整控制周期都未被发现的概率；X = 1 时为 (9/16)^n"""
    n_cycles = DataValidator.validate_non_negative_int(n_cycles, "周期数")
    x = DataValidator.validate_probability(x, "Eve 出现概率 X")
    return float((1 - x / 4) ** (2 * n_cycles))


def detection_escape_per_character() -> float:
    return PER_CHARACTER_CONSTANT


def character_escape_sifted_model(x: float = 1.0, n_characters: int = 1) -> float:
    """随机基会话中 Eve 偷到 n 个字符（每个 4 个密钥符号）而不被发现的概率

    每轮以 1/2 成为密钥、1/2 成为控制；控制轮以 X/8 暴露翻转，
    于是每个密钥符号之前的控制轮全部逃过的概率为 1/(1 + X/8)。
    """
    x = DataValidator.validate_probability(x, "Eve 出现概率 X")
    n_characters = DataValidator.validate_non_negative_int(n_characters, "字符数")
    return float((1 / (1 + x / 8)) ** (KEY_SYMBOLS_PER_CHARACTER * n_characters))


def simulate_control_cycles(n_trials: int, x: float, seed: int, cycles_per_trial: int = 1) -> EscapeEstimate:
    """Alice 不加、Bob 加 HWP 的控制周期，每周期依次发送四种编码"""
    n_trials = DataValidator.validate_positive_int(n_trials, "试验次数")
    cycles_per_trial = DataValidator.validate_positive_int(cycles_per_trial, "每次试验的周期数")
    config = SessionConfig(n_rounds=0, eve_presence=x, attack_enabled=True, seed=seed)
    plans = [RoundPlan(action=action, **CONTROL_PLAN_BASES) for action in CYCLE_ACTIONS] * cycles_per_trial
    rounds_per_trial = len(plans)

    escaped = 0
    for trial in range(n_trials):
        first = trial * rounds_per_trial
        records = run_rounds(config, range(first, first + rounds_per_trial), plans)
        escaped += not any(is_bitflip(r) for r in records)

    estimate = EscapeEstimate.from_counts(escaped, n_trials)
    logger.info(f"🕵️ 控制周期模拟: {n_trials} 次试验, 逃逸率 {estimate.probability:.4f}")
    return estimate


def simulate_character_escape(n_trials: int, x: float, seed: int, characters_per_trial: int = 1) -> EscapeEstimate:
    """随机基会话：凑满 4 个筛后密钥符号为一个字符，期间无翻转即算逃过"""
    n_trials = DataValidator.validate_positive_int(n_trials, "试验次数")
    characters_per_trial = DataValidator.validate_positive_int(characters_per_trial, "每次试验的字符数")
    config = SessionConfig(n_rounds=0, eve_presence=x, attack_enabled=True, seed=seed)
    target = KEY_SYMBOLS_PER_CHARACTER * characters_per_trial

    escaped = 0
    round_id = 0
    for _ in range(n_trials):
        key_symbols = 0
        detected = False
        while key_symbols < target:
            record = run_round(config, round_id, round_rng(seed, round_id))
            round_id += 1
            if record.kind == RoundKind.SAME_BASIS:
                key_symbols += 1
            elif is_bitflip(record):
                detected = True
        escaped += not detected

    estimate = EscapeEstimate.from_counts(escaped, n_trials)
    logger.info(f"🕵️ 字符逃逸模拟: {n_trials} 次试验, 逃逸率 {estimate.probability:.4f}")
    return estimate


def cycle_report(n_cycles: int, x: float, trials: Optional[int], seed: int) -> DetectionReport:
    estimate = simulate_control_cycles(trials, x, seed, n_cycles) if trials and n_cycles > 0 else None
    return DetectionReport(
        mode="cycles",
        count=n_cycles,
        x=x,
        closed_form=detection_escape_probability(n_cycles, x),
        estimate=estimate,
    )


def character_report(n_characters: int, x: float, trials: Optional[int], seed: int) -> DetectionReport:
    n_characters = DataValidator.validate_non_negative_int(n_characters, "字符数")
    estimate = simulate_character_escape(trials, x, seed, n_characters) if trials and n_characters > 0 else None
    return DetectionReport(
        mode="characters",
        count=n_characters,
        x=x,
        closed_form=PER_CHARACTER_CONSTANT ** n_characters,
        model_closed_form=character_escape_sifted_model(x, n_characters),
        estimate=estimate,
    )
