"""记录与结果文件的读写（JSONL / CSV / 运行清单）"""
import csv
import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

from protocol.session import RoundRecord
from utils.error_handler import ValidationError
from utils.formatter import format_number

logger = logging.getLogger('mbqkd')

TRANSCRIPT_FIELDS = (
    'round_id', 'bob_basis', 'alice_basis', 'alice_action', 'alice_symbol',
    'eve_active', 'eve_symbol', 'eve_resent', 'bob_outcome', 'kind',
)
FORMATS = ('jsonl', 'csv')


@dataclass(frozen=True)
class RunManifest:
    command: str
    config: Dict[str, Any]
    seed: int
    version: str
    duration_seconds: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def manifest_path(out: Path) -> Path:
    out = Path(out)
    return out.with_name(out.name + '.manifest.json')


def write_manifest(manifest: RunManifest, out: Path) -> Path:
    path = manifest_path(out)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(manifest.to_dict(), f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write('\n')
    logger.info(f"🧾 运行清单已写入 {path}")
    return path


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    return format_number(value)


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def infer_format(path: Path, fmt: Optional[str] = None) -> str:
    if fmt:
        if fmt not in FORMATS:
            raise ValidationError(f"不支持的记录格式: {fmt}")
        return fmt
    suffix = Path(path).suffix.lower().lstrip('.')
    return 'csv' if suffix == 'csv' else 'jsonl'


def write_transcript(records: Sequence[RoundRecord], path: Path, fmt: Optional[str] = None) -> Path:
    path = Path(path)
    fmt = infer_format(path, fmt)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        if fmt == 'jsonl':
            for record in records:
                f.write(json.dumps(record.to_dict(), ensure_ascii=False) + '\n')
        else:
            dicts = (record.to_dict() for record in records)
            write_csv(f, TRANSCRIPT_FIELDS, ([d[name] for name in TRANSCRIPT_FIELDS] for d in dicts))
    logger.info(f"💾 已写入 {len(records)} 条记录到 {path}（{fmt}）")
    return path


def read_transcript(path: Path, fmt: Optional[str] = None) -> List[RoundRecord]:
    path = Path(path)
    fmt = infer_format(path, fmt)
    with open(path, 'r', encoding='utf-8') as f:
        if fmt == 'jsonl':
            rows = [json.loads(line) for line in f if line.strip()]
        else:
            rows = list(csv.DictReader(f))
    return [RoundRecord.from_dict(row) for row in rows]
