"""会话引擎：Bob 制备 → Alice 编码 → (Eve) → Bob 判别"""
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from adversary.eve import eve_intercept_round, eve_presence_gate
from config.env_settings import env_settings
from devices.discriminator import discriminate
from devices.encoder import EncoderAction, encode, hadamard_on_travel
from optics.fock import MixedBasisSymbol, mixed_basis_state
from utils.data_validator import DataValidator
from utils.error_handler import ContractViolationError, ValidationError

logger = logging.getLogger('mbqkd')

UNIFORM_PRIORS = (0.25, 0.25, 0.25, 0.25)


class BasisChoice(Enum):
    PLAIN = "plain"
    HADAMARD = "hadamard"

    @property
    def label(self) -> str:
        return self.value


class RoundKind(Enum):
    SAME_BASIS = "same_basis"
    DIFFERENT_BASIS = "different_basis"

    @property
    def label(self) -> str:
        return self.value


def round_rng(seed: int, round_id: int) -> np.random.Generator:
    """每一轮独立的随机流，只由 (seed, round_id) 决定"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(round_id,)))


def derive_seed(seed: int, *keys: int) -> int:
    """从主种子派生子任务种子（例如曲线上的每个 x、每种基配置）"""
    state = np.random.SeedSequence(seed, spawn_key=tuple(keys)).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


@dataclass(frozen=True)
class RoundRecord:
    round_id: int
    bob_basis: BasisChoice
    alice_basis: BasisChoice
    alice_action: EncoderAction
    alice_symbol: MixedBasisSymbol
    eve_active: bool
    eve_symbol: Optional[MixedBasisSymbol]
    eve_resent: Optional[MixedBasisSymbol]
    bob_outcome: MixedBasisSymbol
    kind: RoundKind = field(init=False)

    def __post_init__(self):
        kind = RoundKind.SAME_BASIS if self.bob_basis == self.alice_basis else RoundKind.DIFFERENT_BASIS
        object.__setattr__(self, 'kind', kind)
        if self.eve_active != (self.eve_symbol is not None) or self.eve_active != (self.eve_resent is not None):
            raise ContractViolationError(f"第 {self.round_id} 轮: eve_symbol/eve_resent 必须与 eve_active 一致")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'round_id': self.round_id,
            'bob_basis': self.bob_basis.label,
            'alice_basis': self.alice_basis.label,
            'alice_action': self.alice_action.label,
            'alice_symbol': self.alice_symbol.label,
            'eve_active': self.eve_active,
            'eve_symbol': self.eve_symbol.label if self.eve_symbol else None,
            'eve_resent': self.eve_resent.label if self.eve_resent else None,
            'bob_outcome': self.bob_outcome.label,
            'kind': self.kind.label,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RoundRecord':
        def symbol(value) -> Optional[MixedBasisSymbol]:
            if value in (None, '', 'none'):
                return None
            return MixedBasisSymbol.from_label(str(value))

        eve_active = data['eve_active']
        if isinstance(eve_active, str):
            eve_active = eve_active.strip().lower() == 'true'
        try:
            record = cls(
                round_id=int(data['round_id']),
                bob_basis=BasisChoice(data['bob_basis']),
                alice_basis=BasisChoice(data['alice_basis']),
                alice_action=EncoderAction(data['alice_action']),
                alice_symbol=symbol(data['alice_symbol']),
                eve_active=bool(eve_active),
                eve_symbol=symbol(data.get('eve_symbol')),
                eve_resent=symbol(data.get('eve_resent')),
                bob_outcome=symbol(data['bob_outcome']),
            )
        except (KeyError, ValueError, ContractViolationError) as e:
            raise ValidationError(f"无法解析轮次记录 {data!r}: {e}")
        if 'kind' in data and data['kind'] != record.kind.label:
            raise ValidationError(f"第 {record.round_id} 轮的 kind 与基选择不一致")
        return record


@dataclass(frozen=True)
class SessionConfig:
    n_rounds: int
    eve_presence: float = 0.0
    attack_enabled: bool = True
    seed: int = field(default_factory=lambda: env_settings.default_seed)
    symbol_priors: Tuple[float, float, float, float] = UNIFORM_PRIORS
    bob_basis: Optional[BasisChoice] = None
    alice_basis: Optional[BasisChoice] = None

    def __post_init__(self):
        object.__setattr__(self, 'n_rounds', DataValidator.validate_non_negative_int(self.n_rounds, "轮数"))
        object.__setattr__(self, 'eve_presence', DataValidator.validate_probability(self.eve_presence, "Eve 出现概率 X"))
        object.__setattr__(self, 'seed', DataValidator.validate_seed(self.seed))
        object.__setattr__(self, 'symbol_priors', DataValidator.validate_priors(self.symbol_priors))

    @property
    def action_weights(self) -> Tuple[float, float, float]:
        """Identity / HWP0 / MeasureAndReplace 的抽样权重"""
        p1, p2, p3, p4 = self.symbol_priors
        return p1, p2, p3 + p4

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['symbol_priors'] = list(self.symbol_priors)
        data['bob_basis'] = self.bob_basis.label if self.bob_basis else None
        data['alice_basis'] = self.alice_basis.label if self.alice_basis else None
        return data


@dataclass(frozen=True)
class RoundPlan:
    """固定某一轮中原本随机的选择；None 表示照常抽样"""
    bob_basis: Optional[BasisChoice] = None
    alice_basis: Optional[BasisChoice] = None
    action: Optional[EncoderAction] = None


_ACTIONS = (EncoderAction.IDENTITY, EncoderAction.HWP0, EncoderAction.MEASURE_REPLACE)


def _draw_basis(rng: np.random.Generator) -> BasisChoice:
    return BasisChoice.HADAMARD if rng.random() < 0.5 else BasisChoice.PLAIN


def _draw_action(weights: Sequence[float], rng: np.random.Generator) -> EncoderAction:
    u = rng.random()
    cumulative = 0.0
    for action, weight in zip(_ACTIONS, weights):
        cumulative += weight
        if u < cumulative:
            return action
    # 权重和因舍入略小于 1 时落到最后一个非零权重
    return next(a for a, w in reversed(list(zip(_ACTIONS, weights))) if w > 0)


def run_round(config: SessionConfig, round_id: int, rng: np.random.Generator,
              plan: Optional[RoundPlan] = None) -> RoundRecord:
    plan = plan or RoundPlan()
    bob_basis = plan.bob_basis or config.bob_basis or _draw_basis(rng)
    alice_basis = plan.alice_basis or config.alice_basis or _draw_basis(rng)
    action = plan.action or _draw_action(config.action_weights, rng)
    alice_hadamard = alice_basis == BasisChoice.HADAMARD

    bob_pair = mixed_basis_state(MixedBasisSymbol.CHI1)
    eve_active = config.attack_enabled and eve_presence_gate(config.eve_presence, rng)

    if eve_active:
        intercept = eve_intercept_round(bob_pair, action, alice_hadamard, rng)
        state = intercept.state_to_bob
        alice_symbol = intercept.alice_symbol
        eve_symbol, eve_resent = intercept.read_symbol, intercept.resent_symbol
    else:
        state, alice_symbol = encode(action, bob_pair, rng)
        if alice_hadamard:
            state = hadamard_on_travel(state)
        eve_symbol = eve_resent = None

    if bob_basis == BasisChoice.HADAMARD:
        state = hadamard_on_travel(state)
    bob_outcome, _ = discriminate(state, rng)

    return RoundRecord(
        round_id=round_id,
        bob_basis=bob_basis,
        alice_basis=alice_basis,
        alice_action=action,
        alice_symbol=alice_symbol,
        eve_active=eve_active,
        eve_symbol=eve_symbol,
        eve_resent=eve_resent,
        bob_outcome=bob_outcome,
    )


def run_rounds(config: SessionConfig, round_ids: Iterable[int],
               plans: Optional[Sequence[Optional[RoundPlan]]] = None) -> List[RoundRecord]:
    """按给定 round_id 依次运行，plans 与 round_ids 一一对应"""
    records = []
    for n, round_id in enumerate(round_ids):
        plan = plans[n] if plans is not None else None
        records.append(run_round(config, round_id, round_rng(config.seed, round_id), plan))
    return records


def run_session(config: SessionConfig, progress_interval: Optional[int] = None) -> List[RoundRecord]:
    interval = progress_interval or env_settings.progress_interval
    logger.info(f"🚀 开始会话: {config.n_rounds} 轮, X={config.eve_presence}, "
                f"attack={'on' if config.attack_enabled else 'off'}, seed={config.seed}")

    transcript = []
    for round_id in range(config.n_rounds):
        transcript.append(run_round(config, round_id, round_rng(config.seed, round_id)))
        if (round_id + 1) % interval == 0:
            logger.info(f"📊 已完成 {round_id + 1}/{config.n_rounds} 轮")

    logger.info(f"✅ 会话结束: {len(transcript)} 条记录")
    return transcript
