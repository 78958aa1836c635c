"""Born 规则测量与光子替换"""
from typing import Tuple

import numpy as np

from utils.error_handler import ContractViolationError, UnsupportedMeasurementError

from .fock import (
    FOCK_BASIS,
    SUPPORT_TOLERANCE,
    OpticalMode,
    Polarization,
    Side,
    TwoPhotonState,
    fock_index,
)


def _require_normalized(state: TwoPhotonState, name: str):
    if not state.is_normalized():
        raise ContractViolationError(f"{name} 未归一化（范数 {state.norm:.12f}）")


def overlap_probability(a: TwoPhotonState, b: TwoPhotonState) -> float:
    """|⟨a|b⟩|²"""
    _require_normalized(a, "左侧态")
    _require_normalized(b, "右侧态")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def require_single_photon(state: TwoPhotonState, side: Side):
    for element in state.support():
        count = element.photons_on(side)
        if count != 1:
            raise UnsupportedMeasurementError(
                f"{side.name} 上有 {count} 个光子（{element.first.name},{element.second.name}），只支持单光子偏振测量"
            )


def _mode_mask(side: Side, polarization: Polarization) -> np.ndarray:
    mode = OpticalMode.of(side, polarization)
    return np.array([mode in (e.first, e.second) for e in FOCK_BASIS])


def polarization_probabilities(state: TwoPhotonState, side: Side) -> Tuple[float, float]:
    """指定一侧光子测得 H、V 的概率"""
    _require_normalized(state, "被测态")
    require_single_photon(state, side)
    probs = state.probabilities()
    p_h = float(probs[_mode_mask(side, Polarization.H)].sum())
    p_v = float(probs[_mode_mask(side, Polarization.V)].sum())
    return p_h, p_v


def project_polarization(state: TwoPhotonState, side: Side,
                         polarization: Polarization) -> Tuple[float, TwoPhotonState]:
    """投影到该侧光子偏振为 polarization 的子空间，返回 (概率, 坍缩后的归一化态)"""
    p_h, p_v = polarization_probabilities(state, side)
    probability = p_h if polarization == Polarization.H else p_v
    if probability <= SUPPORT_TOLERANCE:
        raise ContractViolationError(f"{side.name} 偏振 {polarization.name} 的概率为 0，无法坍缩")
    kept = np.where(_mode_mask(side, polarization), state.amplitudes, 0.0)
    return probability, TwoPhotonState(kept / np.sqrt(probability))


def measure_polarization(state: TwoPhotonState, side: Side,
                         rng: np.random.Generator) -> Tuple[Polarization, TwoPhotonState]:
    """PBS + 探测器测量一侧光子的 H/V 偏振

    坍缩后的态仍以双光子形式给出：被测光子留在确定偏振的模式中，
    另一侧光子处于相应的条件态。
    """
    p_h, _ = polarization_probabilities(state, side)
    outcome = Polarization.H if rng.random() < p_h else Polarization.V
    _, collapsed = project_polarization(state, side, outcome)
    return outcome, collapsed


def replace_photon(state: TwoPhotonState, side: Side, polarization: Polarization) -> TwoPhotonState:
    """丢弃该侧已测得确定偏振的光子，注入一个偏振为 polarization 的新光子"""
    require_single_photon(state, side)
    modes = {element.mode_on(side) for element in state.support()}
    if len(modes) != 1:
        raise ContractViolationError(f"{side.name} 上的光子偏振不确定，不能直接替换")

    target = OpticalMode.of(side, polarization)
    amplitudes = np.zeros_like(state.amplitudes)
    for element, amplitude in zip(FOCK_BASIS, state.amplitudes):
        if abs(amplitude) ** 2 <= SUPPORT_TOLERANCE:
            continue
        other = element.second if element.first.side == side else element.first
        amplitudes[fock_index(other, target)] += amplitude
    return TwoPhotonState(amplitudes)
