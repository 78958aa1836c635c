"""Eve 的延迟-替换-读取-重发攻击

Eve 截住 Bob 的旅行光子并保留整对（delayed_pair），同时把自己 Ψ⁻ 源的一个光子
发给 Alice。Alice 编码后 Eve 用判别器读出符号，再用同样的编码器把读数强加到
Bob 的那一对上：χ¹/χ² 可以确定地复制，χ³/χ⁴ 只能靠测量加替换，成功率 50%。
"""
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np

from devices.discriminator import discriminate
from devices.encoder import EncoderAction, encode, encode_branches, hadamard_on_travel
from optics.fock import MixedBasisSymbol, TwoPhotonState, mixed_basis_state
from utils.error_handler import ValidationError


@dataclass(frozen=True)
class EveState:
    delayed_pair: TwoPhotonState
    substitute_pair: TwoPhotonState
    read_symbol: Optional[MixedBasisSymbol] = None

    def __post_init__(self):
        for name in ('delayed_pair', 'substitute_pair'):
            if not getattr(self, name).is_normalized():
                raise ValidationError(f"Eve 的 {name} 不是归一化的双光子态")


@dataclass(frozen=True)
class InterceptResult:
    state_to_bob: TwoPhotonState
    read_symbol: MixedBasisSymbol
    resent_symbol: MixedBasisSymbol
    alice_symbol: MixedBasisSymbol
    eve_state: EveState


def eve_presence_gate(x: float, rng: np.random.Generator) -> bool:
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"Eve 出现概率 X 必须位于 [0, 1]，实际为 {x}")
    return bool(rng.random() < x)


def eve_read(travel_from_alice: TwoPhotonState, rng: np.random.Generator) -> MixedBasisSymbol:
    """Eve 手握替换对的两个光子，直接做混合基判别"""
    symbol, _ = discriminate(travel_from_alice, rng)
    return symbol


def eve_reencode(delayed_pair: TwoPhotonState, read: MixedBasisSymbol,
                 rng: np.random.Generator) -> Tuple[TwoPhotonState, MixedBasisSymbol]:
    """把读到的符号强加到 Bob 的原始对上，返回 (发给 Bob 的态, 实际重发的符号)"""
    return encode(EncoderAction.for_symbol(read), delayed_pair, rng)


def reencode_distribution(read: MixedBasisSymbol) -> Dict[MixedBasisSymbol, float]:
    """对 Bob 的 Ψ⁻ 对重发时，实际得到各符号的精确概率"""
    distribution: Dict[MixedBasisSymbol, float] = {}
    delayed = mixed_basis_state(MixedBasisSymbol.CHI1)
    for probability, _, resent in encode_branches(EncoderAction.for_symbol(read), delayed):
        distribution[resent] = distribution.get(resent, 0.0) + probability
    return distribution


def eve_intercept_round(bob_pair: TwoPhotonState, alice_action: EncoderAction,
                        alice_hadamard: bool, rng: np.random.Generator) -> InterceptResult:
    """一轮完整的截获；Bob 一侧的 Hadamard 由协议层在下游施加"""
    state = EveState(delayed_pair=bob_pair, substitute_pair=mixed_basis_state(MixedBasisSymbol.CHI1))

    encoded, alice_symbol = encode(alice_action, state.substitute_pair, rng)
    if alice_hadamard:
        encoded = hadamard_on_travel(encoded)

    state = replace(state, read_symbol=eve_read(encoded, rng))
    state_to_bob, resent = eve_reencode(state.delayed_pair, state.read_symbol, rng)
    return InterceptResult(
        state_to_bob=state_to_bob,
        read_symbol=state.read_symbol,
        resent_symbol=resent,
        alice_symbol=alice_symbol,
        eve_state=state,
    )
