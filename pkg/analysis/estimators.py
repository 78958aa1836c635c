"""由模拟记录估计联合分布与互信息（含标准误）"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.env_settings import env_settings
from protocol.session import RoundRecord, SessionConfig, derive_seed, run_session
from utils.data_validator import DataValidator
from utils.error_handler import ValidationError

from .information import (
    h_e_closed_form,
    iab_closed_form,
    iab_of_table,
    iae_closed_form,
    iae_of_table,
    partial_entropy,
    shannon_entropy,
)
from .tables import NO_EVE, TABLE_SHAPE, BasisConfig, JointDistribution

logger = logging.getLogger('mbqkd')


@dataclass
class JointEstimate:
    distribution: JointDistribution
    stderr: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    n_rounds: int

    def entry_stderr(self, j: int, k: Optional[int], m: int) -> float:
        return float(self.stderr[j - 1, NO_EVE if k is None else k - 1, m - 1])


@dataclass(frozen=True)
class MutualInformationReport:
    x: float
    i_ab_closed: float
    i_ae_closed: float
    i_ab_estimate: float
    i_ab_stderr: float
    i_ae_estimate: float
    i_ae_stderr: float
    h_b: float
    h_e: float
    h_e_closed: float
    n_rounds: int
    basis_configs: Tuple[str, ...]

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _require_records(transcript: Sequence[RoundRecord]):
    if not transcript:
        raise ValidationError("记录为空，无法估计")


def _table_counts(records: Sequence[RoundRecord]) -> np.ndarray:
    counts = np.zeros(TABLE_SHAPE, dtype=np.int64)
    for record in records:
        k = record.eve_resent - 1 if record.eve_active else NO_EVE
        counts[record.alice_symbol - 1, k, record.bob_outcome - 1] += 1
    return counts


def records_for_config(transcript: Sequence[RoundRecord], basis_config: BasisConfig) -> List[RoundRecord]:
    return [r for r in transcript if BasisConfig.from_bases(r.alice_basis, r.bob_basis) == basis_config]


def estimate_joint_from_transcript(transcript: Sequence[RoundRecord],
                                   basis_config: BasisConfig) -> JointEstimate:
    """某一基配置下 p(j, k, m) 的频率估计，标准误为 sqrt(p(1−p)/n)"""
    _require_records(transcript)
    records = records_for_config(transcript, basis_config)
    if not records:
        raise ValidationError(f"记录中没有 {basis_config.label} 配置的同基轮次")

    counts = _table_counts(records)
    n = len(records)
    p = counts / n
    distribution = JointDistribution(p=p, basis_config=basis_config, x=float(p[:, :NO_EVE, :].sum()))
    return JointEstimate(distribution=distribution, stderr=np.sqrt(p * (1 - p) / n), counts=counts, n_rounds=n)


def _information_pair(p: np.ndarray, basis_config: BasisConfig) -> Tuple[float, float]:
    table = JointDistribution(p=p, basis_config=basis_config, x=float(p[:, :NO_EVE, :].sum()))
    return iab_of_table(table), iae_of_table(table)


def _bootstrap_stderr(counts: np.ndarray, basis_config: BasisConfig,
                      samples: int, rng: np.random.Generator) -> Tuple[float, float]:
    if samples < 2:
        return 0.0, 0.0
    n = int(counts.sum())
    resampled = rng.multinomial(n, counts.ravel() / n, size=samples)
    values = np.array([_information_pair(row.reshape(TABLE_SHAPE) / n, basis_config) for row in resampled])
    return tuple(float(s) for s in values.std(axis=0, ddof=1))


def estimate_mi_from_transcript(transcript: Sequence[RoundRecord], x: Optional[float] = None,
                                bootstrap_samples: Optional[int] = None,
                                seed: int = 0) -> MutualInformationReport:
    """逐基配置做插值（plug-in）估计，再对出现的配置取算术平均

    x 缺省时取记录中 Eve 在线的比例。标准误来自多项分布 bootstrap。
    """
    _require_records(transcript)
    if x is None:
        x = float(np.mean([r.eve_active for r in transcript]))
    x = DataValidator.validate_probability(x, "Eve 出现概率 X")
    samples = DataValidator.validate_positive_int(
        bootstrap_samples if bootstrap_samples is not None else env_settings.bootstrap_samples, "bootstrap 次数")
    rng = np.random.default_rng(seed)

    iab, iae, iab_var, iae_var, h_b, h_e = [], [], [], [], [], []
    used = []
    n_rounds = 0
    for basis_config in BasisConfig:
        records = records_for_config(transcript, basis_config)
        if not records:
            continue
        counts = _table_counts(records)
        p = counts / len(records)
        table = JointDistribution(p=p, basis_config=basis_config, x=float(p[:, :NO_EVE, :].sum()))

        iab.append(iab_of_table(table))
        iae.append(iae_of_table(table))
        h_b.append(shannon_entropy(table.bob_marginal().sum(axis=0)))
        h_e.append(partial_entropy(table.eve_marginal().sum(axis=0)))
        se_ab, se_ae = _bootstrap_stderr(counts, basis_config, samples, rng)
        iab_var.append(se_ab ** 2)
        iae_var.append(se_ae ** 2)
        used.append(basis_config.label)
        n_rounds += len(records)

    if not used:
        raise ValidationError("记录中没有同基（both plain / both hadamard）轮次，无法估计互信息")

    count = len(used)
    report = MutualInformationReport(
        x=x,
        i_ab_closed=iab_closed_form(x),
        i_ae_closed=iae_closed_form(x),
        i_ab_estimate=float(np.mean(iab)),
        i_ab_stderr=float(np.sqrt(sum(iab_var)) / count),
        i_ae_estimate=float(np.mean(iae)),
        i_ae_stderr=float(np.sqrt(sum(iae_var)) / count),
        h_b=float(np.mean(h_b)),
        h_e=float(np.mean(h_e)),
        h_e_closed=h_e_closed_form(x),
        n_rounds=n_rounds,
        basis_configs=tuple(used),
    )
    logger.debug(f"📈 互信息估计 X={x}: I_AB={report.i_ab_estimate:.4f}±{report.i_ab_stderr:.4f}, "
                 f"I_AE={report.i_ae_estimate:.4f}±{report.i_ae_stderr:.4f}")
    return report


def simulate_config_transcript(x: float, basis_config: BasisConfig, n_rounds: int,
                               seed: int) -> List[RoundRecord]:
    """两端基固定为该配置、攻击开启的会话"""
    alice_basis, bob_basis = basis_config.bases
    config = SessionConfig(n_rounds=n_rounds, eve_presence=x, attack_enabled=True, seed=seed,
                           alice_basis=alice_basis, bob_basis=bob_basis)
    return run_session(config)


def simulate_joint_estimate(x: float, basis_config: BasisConfig, n_rounds: int, seed: int) -> JointEstimate:
    return estimate_joint_from_transcript(simulate_config_transcript(x, basis_config, n_rounds, seed), basis_config)


def simulate_mi_estimate(x: float, n_rounds: int, seed: int,
                         bootstrap_samples: Optional[int] = None) -> MutualInformationReport:
    """每种基配置各跑 n_rounds 轮，再合并估计"""
    transcript: List[RoundRecord] = []
    for index, basis_config in enumerate(BasisConfig):
        transcript += simulate_config_transcript(x, basis_config, n_rounds, derive_seed(seed, index))
    return estimate_mi_from_transcript(transcript, x=x, bootstrap_samples=bootstrap_samples, seed=seed)
