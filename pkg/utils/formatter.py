"""输出格式化工具"""
from typing import Any, Iterable, Optional, Tuple

SIGNIFICANT_DIGITS = 10
SEPARATOR = "━━━━━━━━━━━━━━"


def format_number(value: Optional[float]) -> str:
    """统一的数值格式：先截到 10 位有效数字，再取最短往返表示"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    rounded = float(f"{float(value):.{SIGNIFICANT_DIGITS}g}")
    if rounded == 0.0:
        rounded = 0.0
    return repr(rounded)


def format_lines(title: str, items: Iterable[Tuple[str, Any]]) -> str:
    lines = [title, SEPARATOR]
    for key, value in items:
        if isinstance(value, str):
            text = value
        else:
            text = format_number(value)
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def format_sift_summary(sift_result, n_rounds: int) -> str:
    return format_lines("mixed-basis QKD session", [
        ("rounds", n_rounds),
        ("key_symbols", len(sift_result.key_symbols)),
        ("key_bits", 2 * len(sift_result.key_symbols)),
        ("key_error_rate", sift_result.key_error_rate),
        ("control_records", len(sift_result.control_records)),
        ("bitflips", sift_result.bitflip_count),
        ("eve_detected", sift_result.eve_detected),
    ])


def format_detection_report(report) -> str:
    items = [
        ("mode", report.mode),
        ("count", report.count),
        ("eve_presence", report.x),
        ("closed_form", report.closed_form),
    ]
    if report.model_closed_form is not None:
        items.append(("sifted_model", report.model_closed_form))
    estimate = report.estimate
    if estimate is not None:
        items += [
            ("monte_carlo", estimate.probability),
            ("stderr", estimate.stderr),
            ("ci95_low", estimate.ci_low),
            ("ci95_high", estimate.ci_high),
            ("trials", estimate.trials),
        ]
    return format_lines("control-mode detection", items)
