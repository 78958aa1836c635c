"""配置管理模块"""
from pathlib import Path

from .env_settings import env_settings

APP_VERSION = "1.0.0"


class Settings:
    """应用配置 - 对外统一入口"""

    @property
    def DEFAULT_SEED(self) -> int:
        return env_settings.default_seed

    @property
    def LOG_TO_FILE(self) -> bool:
        return env_settings.log_to_file

    @property
    def LOG_DIR(self) -> Path:
        return env_settings.log_dir

    @property
    def BOOTSTRAP_SAMPLES(self) -> int:
        return env_settings.bootstrap_samples

    @property
    def PROGRESS_INTERVAL(self) -> int:
        return env_settings.progress_interval

    @classmethod
    def get_log_level(cls) -> int:
        """获取日志级别常量"""
        return env_settings.get_log_level()

    @classmethod
    def validate(cls) -> bool:
        """验证所有配置"""
        return env_settings.validate_all_config()
