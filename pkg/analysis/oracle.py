"""设备层的穷举 Born 规则枚举，给出不含抽样误差的精确分布"""
from typing import Sequence

import numpy as np

from devices.discriminator import discrimination_probabilities
from devices.encoder import EncoderAction, encode_branches, hadamard_on_travel
from optics.fock import MixedBasisSymbol, TwoPhotonState, mixed_basis_state
from protocol.session import UNIFORM_PRIORS, BasisChoice
from utils.data_validator import DataValidator

from .tables import NO_EVE, TABLE_SHAPE, BasisConfig, JointDistribution

_ACTIONS = (EncoderAction.IDENTITY, EncoderAction.HWP0, EncoderAction.MEASURE_REPLACE)


def _bob_probabilities(state: TwoPhotonState, bob_basis: BasisChoice) -> np.ndarray:
    if bob_basis == BasisChoice.HADAMARD:
        state = hadamard_on_travel(state)
    return discrimination_probabilities(state)


def exact_reading_distribution(symbol: MixedBasisSymbol, alice_hadamard: bool = True) -> np.ndarray:
    """Eve 对 Alice 发出的符号（可选经过 Alice 的 Hadamard）的读数分布"""
    state = mixed_basis_state(symbol)
    if alice_hadamard:
        state = hadamard_on_travel(state)
    return discrimination_probabilities(state)


def exact_joint_distribution(x: float, basis_config: BasisConfig,
                             priors: Sequence[float] = UNIFORM_PRIORS) -> JointDistribution:
    """逐分支枚举编码器预示、Eve 读取、重发与 Bob 判别，累加得到 p(j, k, m)"""
    x = DataValidator.validate_probability(x, "Eve 出现概率 X")
    p1, p2, p3, p4 = DataValidator.validate_priors(priors)
    alice_basis, bob_basis = basis_config.bases
    weights = (p1, p2, p3 + p4)
    bob_pair = mixed_basis_state(MixedBasisSymbol.CHI1)

    table = np.zeros(TABLE_SHAPE)
    for action, weight in zip(_ACTIONS, weights):
        if weight == 0.0:
            continue
        for p_encode, encoded, alice_symbol in encode_branches(action, bob_pair):
            j = alice_symbol - 1
            sent = hadamard_on_travel(encoded) if alice_basis == BasisChoice.HADAMARD else encoded

            if x < 1.0:
                table[j, NO_EVE] += (1 - x) * weight * p_encode * _bob_probabilities(sent, bob_basis)
            if x == 0.0:
                continue

            readings = discrimination_probabilities(sent)
            for read, p_read in zip(MixedBasisSymbol, readings):
                if p_read <= 0.0:
                    continue
                for p_resend, resent_state, resent in encode_branches(EncoderAction.for_symbol(read), bob_pair):
                    table[j, resent - 1] += (x * weight * p_encode * p_read * p_resend
                                             * _bob_probabilities(resent_state, bob_basis))

    return JointDistribution(p=table, basis_config=basis_config, x=x)
