"""熵、互信息与闭式曲线"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Union

import numpy as np
from scipy.optimize import bisect
from scipy.special import xlogy
from scipy.stats import entropy

from utils.error_handler import ValidationError

from .tables import BasisConfig, JointDistribution, joint_distribution_closed_form

logger = logging.getLogger('mbqkd')

LN2 = np.log(2.0)
DISTRIBUTION_TOLERANCE = 1e-9
CROSSOVER_XTOL = 1e-9

ArrayLike = Union[float, np.ndarray]


def _as_probabilities(values, require_normalized: bool) -> np.ndarray:
    p = np.asarray(values, dtype=float)
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise ValidationError("概率表为空或包含非有限值")
    if np.any(p < -DISTRIBUTION_TOLERANCE):
        raise ValidationError(f"概率表包含负值: {p.min()}")
    p = np.clip(p, 0.0, None)
    if require_normalized and abs(p.sum() - 1.0) > DISTRIBUTION_TOLERANCE:
        raise ValidationError(f"概率之和必须为 1，实际为 {p.sum()}")
    return p


def shannon_entropy(marginal) -> float:
    """−Σ p log₂ p，0·log 0 记为 0"""
    p = _as_probabilities(marginal, require_normalized=True)
    return float(entropy(p.ravel(), base=2))


def partial_entropy(cells) -> float:
    """只对给定格子求 −Σ p log₂ p，不要求归一化"""
    p = _as_probabilities(cells, require_normalized=False)
    return float(-xlogy(p, p).sum() / LN2)


def mutual_information(joint, convention: str = "standard") -> float:
    """二维联合表的互信息，行是 Alice，列是接收方

    standard:  H(A) + H(B) − H(A,B)
    received:  2·H(B) − H(A,B)，熵只在给出的格子上求和；
               用于 Eve 的部分在线表（Eve 不在线的轮次不计入）。
    """
    table = np.asarray(joint, dtype=float)
    if table.ndim != 2:
        raise ValidationError(f"互信息需要二维联合表，实际维数 {table.ndim}")

    if convention == "standard":
        p = _as_probabilities(table, require_normalized=True)
        return shannon_entropy(p.sum(axis=1)) + shannon_entropy(p.sum(axis=0)) - shannon_entropy(p)
    if convention == "received":
        p = _as_probabilities(table, require_normalized=False)
        return 2 * partial_entropy(p.sum(axis=0)) - partial_entropy(p)
    raise ValidationError(f"未知的互信息约定: {convention}")


def _check_domain(x: ArrayLike) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValidationError(f"X 必须位于 [0, 1]: {x}")
    return arr


def _xlog2x(x: np.ndarray) -> np.ndarray:
    return xlogy(x, x) / LN2


def _scalar_or_array(values: np.ndarray, x: ArrayLike) -> ArrayLike:
    return float(values) if np.ndim(x) == 0 else values


def iab_closed_form(x: ArrayLike) -> ArrayLike:
    """I_AB(X)：两种基配置筛后互信息的算术平均"""
    arr = _check_domain(x)
    values = 0.5 + arr / 8 + (
        15 * _xlog2x(arr)
        + 4 * _xlog2x(2 - arr)
        + 2 * _xlog2x(4 - 3 * arr)
        + _xlog2x(8 - 5 * arr)
    ) / 32
    return _scalar_or_array(values, x)


def iae_closed_form(x: ArrayLike) -> ArrayLike:
    """I_AE(X) = 7X/8 − X log₂X"""
    arr = _check_domain(x)
    return _scalar_or_array(7 * arr / 8 - _xlog2x(arr), x)


def h_e_closed_form(x: ArrayLike) -> ArrayLike:
    """H(E) = 2X − X log₂X"""
    arr = _check_domain(x)
    return _scalar_or_array(2 * arr - _xlog2x(arr), x)


def disturbance(x: ArrayLike) -> ArrayLike:
    """D = X/2"""
    arr = _check_domain(x)
    return _scalar_or_array(arr / 2, x)


def iae_peak() -> float:
    """I_AE 在 [0, 1] 上的极大值点：7/8 − log₂X − 1/ln2 = 0"""
    return float(2 ** (7 / 8 - 1 / LN2))


def crossover() -> float:
    """I_AB(X) = I_AE(X) 在 (0, 1) 内的根"""
    root = bisect(lambda x: iab_closed_form(x) - iae_closed_form(x), 0.0, 1.0, xtol=CROSSOVER_XTOL)
    logger.debug(f"📐 交叉点 X* = {root:.9f}")
    return float(root)


def iab_of_table(distribution: JointDistribution) -> float:
    return mutual_information(distribution.bob_marginal(), convention="standard")


def iae_of_table(distribution: JointDistribution) -> float:
    return mutual_information(distribution.eve_marginal(), convention="received")


def iab_from_tables(x: float) -> float:
    """由两张闭式表计算的 I_AB，按基配置等权平均"""
    return float(np.mean([iab_of_table(joint_distribution_closed_form(x, c)) for c in BasisConfig]))


def iae_from_tables(x: float) -> float:
    return float(np.mean([iae_of_table(joint_distribution_closed_form(x, c)) for c in BasisConfig]))


@dataclass(frozen=True)
class ConsistencyRow:
    x: float
    iab_closed: float
    iab_tables: float
    iae_closed: float
    iae_tables: float

    @property
    def residual(self) -> float:
        return max(abs(self.iab_closed - self.iab_tables), abs(self.iae_closed - self.iae_tables))


def consistency_report(xs: Iterable[float]) -> List[ConsistencyRow]:
    """逐点比较闭式曲线与由表格计算的互信息，残差如实报告"""
    rows = [
        ConsistencyRow(
            x=float(x),
            iab_closed=iab_closed_form(float(x)),
            iab_tables=iab_from_tables(float(x)),
            iae_closed=iae_closed_form(float(x)),
            iae_tables=iae_from_tables(float(x)),
        )
        for x in xs
    ]
    worst = max((row.residual for row in rows), default=0.0)
    logger.info(f"🔍 表格与闭式互信息的最大残差: {worst:.3e}")
    return rows
