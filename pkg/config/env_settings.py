"""环境配置加载模块"""
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

from utils.error_handler import ErrorType, ValidationError

# 加载环境变量
load_dotenv()

logger = logging.getLogger('mbqkd')

DEFAULT_SEED = 20170607
MAX_SEED = 2 ** 64 - 1

_LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL,
}


def _config_error(key: str, value: str, expected: str) -> ValidationError:
    logger.error(f"❌ 环境变量 {key} 格式无效: {value!r}（期望 {expected}）")
    return ValidationError(f"环境变量 {key} 格式无效: {value!r}，期望 {expected}",
                           ErrorType.CONFIGURATION_ERROR)


class EnvSettings:
    """从 .env / 环境变量读取运行参数，所有变量都有默认值"""

    def _get_env(self, key: str, default: str) -> str:
        value = os.getenv(key, '').strip()
        return value if value else default

    def _get_int(self, key: str, default: int, minimum: int, maximum: int) -> int:
        raw = self._get_env(key, str(default))
        try:
            value = int(raw)
        except ValueError:
            raise _config_error(key, raw, f"[{minimum}, {maximum}] 内的整数")
        if value < minimum or value > maximum:
            raise _config_error(key, raw, f"[{minimum}, {maximum}] 内的整数")
        return value

    def _get_bool(self, key: str, default: bool) -> bool:
        raw = self._get_env(key, 'True' if default else 'False').lower()
        if raw in ('true', '1', 'yes'):
            return True
        if raw in ('false', '0', 'no'):
            return False
        raise _config_error(key, raw, "True/False")

    @property
    def default_seed(self) -> int:
        return self._get_int('MBQKD_SEED', DEFAULT_SEED, 0, MAX_SEED)

    @property
    def log_level(self) -> str:
        level = self._get_env('MBQKD_LOG_LEVEL', 'INFO').upper()
        if level not in _LEVELS:
            raise _config_error('MBQKD_LOG_LEVEL', level, '/'.join(_LEVELS))
        return level

    @property
    def log_to_file(self) -> bool:
        return self._get_bool('MBQKD_LOG_TO_FILE', False)

    @property
    def log_dir(self) -> Path:
        return Path(self._get_env('MBQKD_LOG_DIR', 'logs'))

    @property
    def bootstrap_samples(self) -> int:
        return self._get_int('MBQKD_BOOTSTRAP_SAMPLES', 200, 1, 100000)

    @property
    def progress_interval(self) -> int:
        return self._get_int('MBQKD_PROGRESS_INTERVAL', 50000, 1, MAX_SEED)

    def get_log_level(self) -> int:
        """获取日志级别常量"""
        return _LEVELS[self.log_level]

    def validate_all_config(self) -> bool:
        """逐项读取一遍，格式错误直接抛出 ValidationError"""
        self.default_seed
        self.log_level
        self.log_to_file
        self.bootstrap_samples
        self.progress_interval
        logger.debug("✅ 所有配置验证通过")
        return True


# 创建全局实例
env_settings = EnvSettings()
