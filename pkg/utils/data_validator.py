"""数据验证模块"""
import logging
import math
from typing import Any, Sequence, Tuple

from .error_handler import ValidationError

logger = logging.getLogger('mbqkd')

PRIOR_TOLERANCE = 1e-9
MAX_SEED = 2 ** 64 - 1


class DataValidator:
    """数据验证器"""

    @classmethod
    def validate_probability(cls, value: Any, field_name: str = "概率") -> float:
        try:
            prob = float(value)
        except (TypeError, ValueError):
            logger.warning(f"{field_name} 不是有效数值: {value!r}")
            raise ValidationError(f"{field_name} 不是有效数值: {value!r}")

        if not math.isfinite(prob) or prob < 0.0 or prob > 1.0:
            logger.warning(f"{field_name} 超出 [0, 1]: {prob}")
            raise ValidationError(f"{field_name} 必须位于 [0, 1]，实际为 {prob}")

        return prob

    @classmethod
    def validate_priors(cls, priors: Sequence[float]) -> Tuple[float, float, float, float]:
        values = tuple(float(p) for p in priors)
        if len(values) != 4:
            raise ValidationError(f"符号先验必须恰好 4 个，实际 {len(values)} 个")

        for i, p in enumerate(values, 1):
            if not math.isfinite(p) or p < 0.0:
                logger.warning(f"符号先验 chi{i} 无效: {p}")
                raise ValidationError(f"符号先验 chi{i} 无效: {p}")

        total = sum(values)
        if abs(total - 1.0) > PRIOR_TOLERANCE:
            logger.warning(f"符号先验之和不为 1: {total}")
            raise ValidationError(f"符号先验之和必须为 1，实际为 {total}")

        return values

    @classmethod
    def validate_positive_int(cls, value: Any, field_name: str = "数量") -> int:
        number = cls._as_int(value, field_name)
        if number < 1:
            logger.warning(f"{field_name} 必须为正整数: {number}")
            raise ValidationError(f"{field_name} 必须为正整数，实际为 {number}")
        return number

    @classmethod
    def validate_non_negative_int(cls, value: Any, field_name: str = "数量") -> int:
        number = cls._as_int(value, field_name)
        if number < 0:
            logger.warning(f"{field_name} 不能为负: {number}")
            raise ValidationError(f"{field_name} 不能为负，实际为 {number}")
        return number

    @classmethod
    def validate_seed(cls, value: Any) -> int:
        seed = cls._as_int(value, "随机种子")
        if seed < 0 or seed > MAX_SEED:
            logger.warning(f"随机种子超出 64 位范围: {seed}")
            raise ValidationError(f"随机种子必须位于 [0, 2^64)，实际为 {seed}")
        return seed

    @classmethod
    def validate_x_range(cls, start: Any, end: Any, steps: Any) -> Tuple[float, float, int]:
        x_start = cls.validate_probability(start, "x 起点")
        x_end = cls.validate_probability(end, "x 终点")
        n_steps = cls.validate_positive_int(steps, "步数")
        if x_end < x_start:
            logger.warning(f"x 区间颠倒: {x_start} > {x_end}")
            raise ValidationError(f"x 终点必须不小于起点: {x_start} > {x_end}")
        return x_start, x_end, n_steps

    @staticmethod
    def _as_int(value: Any, field_name: str) -> int:
        if isinstance(value, bool):
            raise ValidationError(f"{field_name} 不是整数: {value!r}")
        if isinstance(value, float):
            if not value.is_integer():
                raise ValidationError(f"{field_name} 不是整数: {value!r}")
            return int(value)
        try:
            return int(value)
        except (TypeError, ValueError):
            logger.warning(f"{field_name} 转换失败: {value!r}")
            raise ValidationError(f"{field_name} 不是整数: {value!r}")
