"""双光子、四模式的二次量子化态代数

模式顺序固定为 Side1H < Side1V < Side2H < Side2V。双光子 Fock 基按 (i, j), i <= j
的字典序排列，共 10 个元素；双占据元素使用归一化的 a†²|0⟩/√2。

态与 4x4 对称矩阵 M 一一对应：|ψ⟩ = Σ_ij M_ij a_i† a_j† |0⟩。
模式变换 a_i† → Σ_k U_ki a_k† 作用后 M' = U M Uᵀ。
"""
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property, lru_cache
from typing import Dict, Mapping, NamedTuple, Tuple

import numpy as np

from utils.error_handler import ContractViolationError

NORM_TOLERANCE = 1e-9
SUPPORT_TOLERANCE = 1e-12
N_MODES = 4
SQRT2 = np.sqrt(2.0)


class Side(IntEnum):
    SIDE1 = 1
    SIDE2 = 2


class Polarization(IntEnum):
    H = 0
    V = 1

    @property
    def flipped(self) -> 'Polarization':
        return Polarization(1 - self.value)


class OpticalMode(IntEnum):
    SIDE1_H = 0
    SIDE1_V = 1
    SIDE2_H = 2
    SIDE2_V = 3

    @property
    def side(self) -> Side:
        return Side.SIDE1 if self.value < 2 else Side.SIDE2

    @property
    def polarization(self) -> Polarization:
        return Polarization(self.value % 2)

    @classmethod
    def of(cls, side: Side, polarization: Polarization) -> 'OpticalMode':
        return cls(2 * (side - 1) + polarization)


# 家中光子留在 Bob 处，旅行光子往返于 Bob 与 Alice 之间
HOME_SIDE = Side.SIDE1
TRAVEL_SIDE = Side.SIDE2


class FockBasisElement(NamedTuple):
    first: OpticalMode
    second: OpticalMode

    @property
    def is_bunched(self) -> bool:
        return self.first == self.second

    def photons_on(self, side: Side) -> int:
        return int(self.first.side == side) + int(self.second.side == side)

    def mode_on(self, side: Side) -> OpticalMode:
        """该侧唯一的光子所在模式；调用方需保证该侧恰有一个光子"""
        return self.first if self.first.side == side else self.second


FOCK_BASIS: Tuple[FockBasisElement, ...] = tuple(
    FockBasisElement(OpticalMode(i), OpticalMode(j))
    for i in range(N_MODES) for j in range(i, N_MODES)
)
FOCK_INDEX: Dict[Tuple[int, int], int] = {
    (int(e.first), int(e.second)): n for n, e in enumerate(FOCK_BASIS)
}
FOCK_DIM = len(FOCK_BASIS)

_ROWS = np.array([e.first for e in FOCK_BASIS])
_COLS = np.array([e.second for e in FOCK_BASIS])
_BUNCHED = _ROWS == _COLS
# 振幅 → 对称矩阵的权重，以及反向的放大系数
_TO_MATRIX = np.where(_BUNCHED, 1.0 / SQRT2, 0.5)
_FROM_MATRIX = np.where(_BUNCHED, SQRT2, 2.0)


def fock_index(a: OpticalMode, b: OpticalMode) -> int:
    i, j = sorted((int(a), int(b)))
    return FOCK_INDEX[(i, j)]


@dataclass(frozen=True, eq=False)
class TwoPhotonState:
    """10 维 Fock 空间中的纯态，构造后振幅数组只读"""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape != (FOCK_DIM,):
            raise ContractViolationError(f"双光子态需要 {FOCK_DIM} 个振幅，实际 {amplitudes.size} 个")
        if not np.all(np.isfinite(amplitudes)):
            raise ContractViolationError("双光子态包含非有限振幅")
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[OpticalMode, OpticalMode], complex]) -> 'TwoPhotonState':
        amplitudes = np.zeros(FOCK_DIM, dtype=complex)
        for (a, b), value in terms.items():
            amplitudes[fock_index(a, b)] += value
        return cls(amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOLERANCE) -> bool:
        return abs(self.norm - 1.0) <= tol

    def probabilities(self) -> np.ndarray:
        """每个 Fock 基元素的 Born 概率"""
        return np.abs(self.amplitudes) ** 2

    def support(self) -> Tuple[FockBasisElement, ...]:
        probs = self.probabilities()
        return tuple(e for e, p in zip(FOCK_BASIS, probs) if p > SUPPORT_TOLERANCE)

    def to_matrix(self) -> np.ndarray:
        matrix = np.zeros((N_MODES, N_MODES), dtype=complex)
        weighted = self.amplitudes * _TO_MATRIX
        matrix[_ROWS, _COLS] = weighted
        matrix[_COLS, _ROWS] = weighted
        return matrix

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> 'TwoPhotonState':
        return cls(matrix[_ROWS, _COLS] * _FROM_MATRIX)

    def normalized(self) -> 'TwoPhotonState':
        norm = self.norm
        if norm <= SUPPORT_TOLERANCE:
            raise ContractViolationError("零向量无法归一化")
        return TwoPhotonState(self.amplitudes / norm)

    def __repr__(self) -> str:
        terms = [
            f"{a:+.4f}|{e.first.name},{e.second.name}⟩"
            for e, a in zip(FOCK_BASIS, self.amplitudes) if abs(a) ** 2 > SUPPORT_TOLERANCE
        ]
        return f"TwoPhotonState({' '.join(terms) or '0'})"


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """作用在产生算符上的 4x4 矩阵：第 i 列是 a_i† 的像"""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (N_MODES, N_MODES):
            raise ContractViolationError(f"模式矩阵必须是 4x4，实际 {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def identity(cls) -> 'ModeUnitary':
        return cls(np.eye(N_MODES))

    @classmethod
    def on_side(cls, side: Side, block: np.ndarray) -> 'ModeUnitary':
        """把 2x2 偏振（Jones）矩阵放到指定一侧，另一侧保持恒等"""
        matrix = np.eye(N_MODES, dtype=complex)
        start = OpticalMode.of(side, Polarization.H)
        matrix[start:start + 2, start:start + 2] = block
        return cls(matrix)

    @cached_property
    def unitarity_error(self) -> float:
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(N_MODES))))

    def is_unitary(self, tol: float = NORM_TOLERANCE) -> bool:
        return self.unitarity_error <= tol

    def __matmul__(self, other: 'ModeUnitary') -> 'ModeUnitary':
        """self @ other 表示先作用 other，再作用 self"""
        return ModeUnitary(self.matrix @ other.matrix)


def apply_mode_unitary(state: TwoPhotonState, u: ModeUnitary) -> TwoPhotonState:
    if not u.is_unitary():
        raise ContractViolationError(f"模式矩阵不是幺正的（偏差 {u.unitarity_error:.3e}）")
    if not state.is_normalized():
        raise ContractViolationError(f"输入态未归一化（范数 {state.norm:.12f}）")
    matrix = state.to_matrix()
    return TwoPhotonState.from_matrix(u.matrix @ matrix @ u.matrix.T)


class MixedBasisSymbol(IntEnum):
    CHI1 = 1
    CHI2 = 2
    CHI3 = 3
    CHI4 = 4

    @property
    def label(self) -> str:
        return f"chi{self.value}"

    @classmethod
    def from_label(cls, label: str) -> 'MixedBasisSymbol':
        return cls(int(label.strip().lower().removeprefix('chi')))

    @property
    def is_bell(self) -> bool:
        return self in (MixedBasisSymbol.CHI1, MixedBasisSymbol.CHI2)

    @property
    def partner(self) -> 'MixedBasisSymbol':
        """同一对内的另一个符号：χ¹↔χ²，χ³↔χ⁴"""
        return _PARTNERS[self]


_PARTNERS = {
    MixedBasisSymbol.CHI1: MixedBasisSymbol.CHI2,
    MixedBasisSymbol.CHI2: MixedBasisSymbol.CHI1,
    MixedBasisSymbol.CHI3: MixedBasisSymbol.CHI4,
    MixedBasisSymbol.CHI4: MixedBasisSymbol.CHI3,
}


@lru_cache(maxsize=None)
def mixed_basis_state(symbol: MixedBasisSymbol) -> TwoPhotonState:
    """χ¹,² = (|H⟩₁|V⟩₂ ∓ |V⟩₁|H⟩₂)/√2，χ³ = |H⟩₁|H⟩₂，χ⁴ = |V⟩₁|V⟩₂"""
    symbol = MixedBasisSymbol(symbol)
    h1v2 = (OpticalMode.SIDE1_H, OpticalMode.SIDE2_V)
    v1h2 = (OpticalMode.SIDE1_V, OpticalMode.SIDE2_H)
    if symbol == MixedBasisSymbol.CHI1:
        return TwoPhotonState.from_terms({h1v2: 1 / SQRT2, v1h2: -1 / SQRT2})
    if symbol == MixedBasisSymbol.CHI2:
        return TwoPhotonState.from_terms({h1v2: 1 / SQRT2, v1h2: 1 / SQRT2})
    if symbol == MixedBasisSymbol.CHI3:
        return TwoPhotonState.from_terms({(OpticalMode.SIDE1_H, OpticalMode.SIDE2_H): 1.0})
    return TwoPhotonState.from_terms({(OpticalMode.SIDE1_V, OpticalMode.SIDE2_V): 1.0})
