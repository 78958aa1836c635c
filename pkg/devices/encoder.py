"""Alice 的三种编码器与可插入的 HWP(π/8)"""
from enum import Enum
from typing import List, Tuple

import numpy as np

from optics.elements import hadamard_unitary, half_wave_plate_unitary
from optics.fock import TRAVEL_SIDE, MixedBasisSymbol, Polarization, TwoPhotonState, apply_mode_unitary
from optics.measurement import (
    measure_polarization,
    polarization_probabilities,
    project_polarization,
    replace_photon,
    require_single_photon,
)


class EncoderAction(Enum):
    IDENTITY = "identity"
    HWP0 = "hwp0"
    MEASURE_REPLACE = "measure_replace"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def for_symbol(cls, symbol: MixedBasisSymbol) -> 'EncoderAction':
        if symbol == MixedBasisSymbol.CHI1:
            return cls.IDENTITY
        if symbol == MixedBasisSymbol.CHI2:
            return cls.HWP0
        return cls.MEASURE_REPLACE


def _heralded_symbol(injected: Polarization) -> MixedBasisSymbol:
    # 注入光子与坍缩后的家中光子同偏振
    return MixedBasisSymbol.CHI3 if injected == Polarization.H else MixedBasisSymbol.CHI4


def encode(action: EncoderAction, state: TwoPhotonState,
           rng: np.random.Generator) -> Tuple[TwoPhotonState, MixedBasisSymbol]:
    """对旅行光子编码，返回 (编码后的态, 实际得到的符号)"""
    require_single_photon(state, TRAVEL_SIDE)

    if action == EncoderAction.IDENTITY:
        return state, MixedBasisSymbol.CHI1
    if action == EncoderAction.HWP0:
        return apply_mode_unitary(state, half_wave_plate_unitary(TRAVEL_SIDE, 0.0)), MixedBasisSymbol.CHI2

    outcome, collapsed = measure_polarization(state, TRAVEL_SIDE, rng)
    injected = outcome.flipped
    return replace_photon(collapsed, TRAVEL_SIDE, injected), _heralded_symbol(injected)


def encode_branches(action: EncoderAction,
                    state: TwoPhotonState) -> List[Tuple[float, TwoPhotonState, MixedBasisSymbol]]:
    """encode 的全部可能结果及其概率，用于精确枚举"""
    require_single_photon(state, TRAVEL_SIDE)
    if action != EncoderAction.MEASURE_REPLACE:
        encoded, realized = encode(action, state, None)
        return [(1.0, encoded, realized)]

    branches = []
    for outcome, probability in zip(Polarization, polarization_probabilities(state, TRAVEL_SIDE)):
        if probability <= 0.0:
            continue
        _, collapsed = project_polarization(state, TRAVEL_SIDE, outcome)
        injected = outcome.flipped
        branches.append((probability, replace_photon(collapsed, TRAVEL_SIDE, injected), _heralded_symbol(injected)))
    return branches


def hadamard_on_travel(state: TwoPhotonState) -> TwoPhotonState:
    require_single_photon(state, TRAVEL_SIDE)
    return apply_mode_unitary(state, hadamard_unitary(TRAVEL_SIDE))
