"""协议层：会话、理想信道、筛选"""
from .session import (
    UNIFORM_PRIORS,
    BasisChoice,
    RoundKind,
    RoundPlan,
    RoundRecord,
    SessionConfig,
    derive_seed,
    round_rng,
    run_round,
    run_rounds,
    run_session,
)
from .channel import ideal_transition_matrix, is_impossible_without_eve
from .sifting import ControlReport, SiftResult, SymbolControlStats, control_check, is_bitflip, sift

__all__ = [
    'UNIFORM_PRIORS',
    'BasisChoice',
    'RoundKind',
    'RoundPlan',
    'RoundRecord',
    'SessionConfig',
    'derive_seed',
    'round_rng',
    'run_round',
    'run_rounds',
    'run_session',
    'ideal_transition_matrix',
    'is_impossible_without_eve',
    'ControlReport',
    'SiftResult',
    'SymbolControlStats',
    'control_check',
    'is_bitflip',
    'sift',
]
