"""混合基判别器：BS + 每侧 PBS + 四个光子数分辨探测器"""
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Optional, Tuple

import numpy as np

from optics.elements import beam_splitter_unitary
from optics.fock import (
    FOCK_BASIS,
    FockBasisElement,
    MixedBasisSymbol,
    TwoPhotonState,
    apply_mode_unitary,
)
from utils.error_handler import PatternClassificationError

# 分类之外的概率质量超过此值视为内部错误
CLASSIFICATION_TOLERANCE = 1e-12


class Detector(IntEnum):
    """PBS 透射 H → DxH，反射 V → DxV；编号与光学模式一致"""
    D1H = 0
    D1V = 1
    D2H = 2
    D2V = 3

    @property
    def side(self) -> int:
        return 1 if self.value < 2 else 2

    @property
    def is_horizontal(self) -> bool:
        return self.value % 2 == 0


@dataclass(frozen=True)
class DetectionPattern:
    counts: Tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.counts) != 4 or any(c < 0 for c in self.counts) or sum(self.counts) != 2:
            raise ValueError(f"探测图样必须是 4 个非负计数且总和为 2: {self.counts}")

    @classmethod
    def from_element(cls, element: FockBasisElement) -> 'DetectionPattern':
        counts = [0, 0, 0, 0]
        counts[element.first] += 1
        counts[element.second] += 1
        return cls(tuple(counts))

    @property
    def clicked(self) -> Tuple[Detector, ...]:
        return tuple(d for d in Detector for _ in range(self.counts[d]))

    @property
    def label(self) -> str:
        return '+'.join(d.name for d in self.clicked)


def classify_pattern(pattern: DetectionPattern) -> MixedBasisSymbol:
    first, second = pattern.clicked
    if first == second:
        return MixedBasisSymbol.CHI3 if first.is_horizontal else MixedBasisSymbol.CHI4
    if first.side == second.side:
        return MixedBasisSymbol.CHI2
    if first.is_horizontal != second.is_horizontal:
        return MixedBasisSymbol.CHI1
    raise PatternClassificationError(f"探测图样 {pattern.label} 不属于任何混合基符号")


def _try_classify(element: FockBasisElement) -> Optional[MixedBasisSymbol]:
    try:
        return classify_pattern(DetectionPattern.from_element(element))
    except PatternClassificationError:
        return None


_PATTERNS = tuple(DetectionPattern.from_element(e) for e in FOCK_BASIS)
_ELEMENT_SYMBOLS = tuple(_try_classify(e) for e in FOCK_BASIS)
_INVALID = np.array([s is None for s in _ELEMENT_SYMBOLS])
_SYMBOL_MASKS = {
    symbol: np.array([s == symbol for s in _ELEMENT_SYMBOLS]) for symbol in MixedBasisSymbol
}


def pattern_probabilities(state: TwoPhotonState) -> Dict[DetectionPattern, float]:
    """分束器之后每个探测图样的 Born 概率（只列非零项）"""
    probs = apply_mode_unitary(state, beam_splitter_unitary()).probabilities()
    return {pattern: float(p) for pattern, p in zip(_PATTERNS, probs) if p > CLASSIFICATION_TOLERANCE}


def discrimination_probabilities(state: TwoPhotonState) -> np.ndarray:
    """判别结果 χ¹..χ⁴ 的精确分布，下标 0..3"""
    probs = apply_mode_unitary(state, beam_splitter_unitary()).probabilities()
    invalid = float(probs[_INVALID].sum())
    if invalid > CLASSIFICATION_TOLERANCE:
        raise PatternClassificationError(f"同偏振分离图样的概率为 {invalid:.3e}")
    return np.array([probs[_SYMBOL_MASKS[s]].sum() for s in MixedBasisSymbol])


def discriminate(state: TwoPhotonState,
                 rng: np.random.Generator) -> Tuple[MixedBasisSymbol, DetectionPattern]:
    probs = apply_mode_unitary(state, beam_splitter_unitary()).probabilities()
    cumulative = np.cumsum(probs)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side='right'))
    index = min(index, len(FOCK_BASIS) - 1)

    symbol = _ELEMENT_SYMBOLS[index]
    pattern = _PATTERNS[index]
    if symbol is None:
        raise PatternClassificationError(f"探测图样 {pattern.label} 不属于任何混合基符号")
    return symbol, pattern
