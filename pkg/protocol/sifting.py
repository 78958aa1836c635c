"""筛选与控制模式比对"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from optics.fock import MixedBasisSymbol

from .channel import is_impossible_without_eve
from .session import RoundKind, RoundRecord

logger = logging.getLogger('mbqkd')


@dataclass
class SymbolControlStats:
    records: int = 0
    flips: int = 0


@dataclass
class ControlReport:
    eve_detected: bool
    bitflip_count: int
    per_symbol_stats: Dict[MixedBasisSymbol, SymbolControlStats]
    flagged_round_ids: List[int] = field(default_factory=list)


@dataclass
class SiftResult:
    key_symbols: List[MixedBasisSymbol]
    control_records: List[RoundRecord]
    eve_detected: bool
    bitflip_count: int
    key_errors: int = 0

    @property
    def key_error_rate(self) -> Optional[float]:
        """筛后密钥中 Bob 结果与 Alice 符号不一致的比例；无密钥时为 None"""
        if not self.key_symbols:
            return None
        return self.key_errors / len(self.key_symbols)


def is_bitflip(record: RoundRecord) -> bool:
    """理想信道下不可能出现的 (Alice 符号, Bob 结果) 组合"""
    return is_impossible_without_eve(record.alice_basis, record.bob_basis,
                                     record.alice_symbol, record.bob_outcome)


def control_check(control_records: Sequence[RoundRecord]) -> ControlReport:
    stats = {symbol: SymbolControlStats() for symbol in MixedBasisSymbol}
    flagged = []
    for record in control_records:
        entry = stats[record.alice_symbol]
        entry.records += 1
        if is_bitflip(record):
            entry.flips += 1
            flagged.append(record.round_id)

    if flagged:
        logger.warning(f"🚨 控制模式发现 {len(flagged)} 次比特翻转，首次在第 {flagged[0]} 轮")
    return ControlReport(
        eve_detected=bool(flagged),
        bitflip_count=len(flagged),
        per_symbol_stats=stats,
        flagged_round_ids=flagged,
    )


def sift(transcript: Sequence[RoundRecord]) -> SiftResult:
    key_symbols = []
    key_errors = 0
    control_records = []
    for record in transcript:
        if record.kind == RoundKind.SAME_BASIS:
            key_symbols.append(record.bob_outcome)
            key_errors += record.bob_outcome != record.alice_symbol
        else:
            control_records.append(record)

    report = control_check(control_records)
    logger.info(f"🔑 筛选完成: 密钥 {len(key_symbols)} 个符号, 控制记录 {len(control_records)} 条, "
                f"翻转 {report.bitflip_count} 次")
    return SiftResult(
        key_symbols=key_symbols,
        control_records=control_records,
        eve_detected=report.eve_detected,
        bitflip_count=report.bitflip_count,
        key_errors=key_errors,
    )
