"""联合概率表 p(j, k, m)

j：Alice 发送的符号；k：Eve 读取后实际重发给 Bob 的符号（下标 4 表示本轮 Eve 不在线）；
m：Bob 的测量结果。表以基配置为条件，整体求和为 1。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from protocol.session import BasisChoice
from utils.data_validator import DataValidator
from utils.error_handler import ValidationError

NO_EVE = 4
TABLE_SHAPE = (4, 5, 4)
TABLE_TOLERANCE = 1e-12


class BasisConfig(Enum):
    NO_HWP = "no_hwp"
    BOTH_HWP = "both_hwp"

    @property
    def label(self) -> str:
        return self.value

    @property
    def bases(self) -> Tuple[BasisChoice, BasisChoice]:
        """(Alice 的基, Bob 的基)"""
        if self == BasisConfig.NO_HWP:
            return BasisChoice.PLAIN, BasisChoice.PLAIN
        return BasisChoice.HADAMARD, BasisChoice.HADAMARD

    @classmethod
    def from_bases(cls, alice_basis: BasisChoice, bob_basis: BasisChoice) -> Optional['BasisConfig']:
        for config in cls:
            if config.bases == (alice_basis, bob_basis):
                return config
        return None

    @classmethod
    def from_table_number(cls, which: int) -> 'BasisConfig':
        if which == 1:
            return cls.NO_HWP
        if which == 2:
            return cls.BOTH_HWP
        raise ValidationError(f"表编号只能是 1 或 2，实际为 {which}")


def k_index(k: Optional[int]) -> int:
    return NO_EVE if k is None else int(k) - 1


@dataclass
class JointDistribution:
    p: np.ndarray = field(repr=False)
    basis_config: BasisConfig
    x: float

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float)
        if self.p.shape != TABLE_SHAPE:
            raise ValidationError(f"联合分布形状必须是 {TABLE_SHAPE}，实际 {self.p.shape}")

    def entry(self, j: int, k: Optional[int], m: int) -> float:
        return float(self.p[j - 1, k_index(k), m - 1])

    def bob_marginal(self) -> np.ndarray:
        """p(j, m)，对 k 求和"""
        return self.p.sum(axis=1)

    def eve_marginal(self) -> np.ndarray:
        """p(j, k)，只含 Eve 在线的 k = 1..4"""
        return self.p[:, :NO_EVE, :].sum(axis=2)

    def total(self) -> float:
        return float(self.p.sum())

    def eve_share(self) -> float:
        return float(self.p[:, :NO_EVE, :].sum())

    def is_valid(self, tol: float = TABLE_TOLERANCE) -> bool:
        return (
            bool(np.all(self.p >= -tol))
            and abs(self.total() - 1.0) <= tol
            and abs(self.eve_share() - self.x) <= tol
        )


# 以 x 的单位给出 Eve 在线时的非零格子：(j, k, m) → 系数
_NO_HWP_EVE: Dict[Tuple[int, int, int], float] = {
    (1, 1, 1): 1 / 4,
    (2, 2, 2): 1 / 4,
    (3, 3, 3): 1 / 8,
    (3, 4, 4): 1 / 8,
    (4, 3, 3): 1 / 8,
    (4, 4, 4): 1 / 8,
}

_BOTH_HWP_J1: Dict[Tuple[int, int], float] = {
    (2, 1): 1 / 16,
    (3, 1): 1 / 64,
    (4, 1): 1 / 64,
    (3, 2): 1 / 64,
    (4, 2): 1 / 64,
    (2, 3): 1 / 32,
    (3, 3): 1 / 32,
    (2, 4): 1 / 32,
    (4, 4): 1 / 32,
}

_BOTH_HWP_J3: Dict[Tuple[int, int], float] = {
    (2, 1): 1 / 32,
    (3, 1): 1 / 64,
    (4, 1): 1 / 64,
    (1, 2): 1 / 32,
    (3, 2): 1 / 64,
    (4, 2): 1 / 64,
    (1, 3): 1 / 64,
    (2, 3): 1 / 64,
    (3, 3): 1 / 32,
    (1, 4): 1 / 64,
    (2, 4): 1 / 64,
    (4, 4): 1 / 32,
}


def _relabel(cells: Dict[Tuple[int, int], float], swap: Dict[int, int]) -> Dict[Tuple[int, int], float]:
    return {(swap.get(k, k), swap.get(m, m)): v for (k, m), v in cells.items()}


def _both_hwp_eve() -> Dict[Tuple[int, int, int], float]:
    # χ²、χ⁴ 两列由 H↔V 换标对称得到
    blocks = {
        1: _BOTH_HWP_J1,
        2: _relabel(_BOTH_HWP_J1, {1: 2, 2: 1}),
        3: _BOTH_HWP_J3,
        4: _relabel(_BOTH_HWP_J3, {3: 4, 4: 3}),
    }
    return {(j, k, m): v for j, cells in blocks.items() for (k, m), v in cells.items()}


_EVE_CELLS = {
    BasisConfig.NO_HWP: _NO_HWP_EVE,
    BasisConfig.BOTH_HWP: _both_hwp_eve(),
}


def joint_distribution_closed_form(x: float, basis_config: BasisConfig) -> JointDistribution:
    x = DataValidator.validate_probability(x, "Eve 出现概率 X")
    p = np.zeros(TABLE_SHAPE)
    for j in range(4):
        p[j, NO_EVE, j] = (1.0 - x) / 4
    for (j, k, m), coefficient in _EVE_CELLS[basis_config].items():
        p[j - 1, k - 1, m - 1] = coefficient * x
    return JointDistribution(p=p, basis_config=basis_config, x=x)


def table_rows(distribution: JointDistribution):
    """按规范顺序 (j, k, m) 逐格产出，k 的顺序为 1..4 然后是 None"""
    for j in range(1, 5):
        for k in (1, 2, 3, 4, None):
            for m in range(1, 5):
                yield j, k, m, distribution.entry(j, k, m)
