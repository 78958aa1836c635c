"""窃听者模型"""
from .eve import (
    EveState,
    InterceptResult,
    eve_intercept_round,
    eve_presence_gate,
    eve_read,
    eve_reencode,
    reencode_distribution,
)

__all__ = [
    'EveState',
    'InterceptResult',
    'eve_intercept_round',
    'eve_presence_gate',
    'eve_read',
    'eve_reencode',
    'reencode_distribution',
]
