"""混合基 QKD 模拟器主程序"""
import logging
import sys
from typing import List, Optional

from cli.commands import run
from config import Settings
from utils.common import global_performance_monitor
from utils.error_handler import QKDError, global_error_handler
from utils.logger import setup_logger

logger = logging.getLogger('mbqkd')


def _configure_logging():
    try:
        settings = Settings()
        log_dir = settings.LOG_DIR if settings.LOG_TO_FILE else None
        setup_logger('mbqkd', Settings.get_log_level(), log_dir)
    except QKDError:
        # 日志配置本身有误时先用默认级别把错误打出来
        setup_logger('mbqkd', logging.INFO)
        raise


def _log_run_stats():
    for operation, stats in global_performance_monitor.get_stats().items():
        logger.debug(f"⏱️ {operation}: {stats['count']} 次, 共 {stats['total']:.3f}s")
    errors = {t.value: n for t, n in global_error_handler.error_counts.items() if n}
    if errors:
        logger.debug(f"📊 错误统计: {errors}")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        _configure_logging()
        Settings.validate()
        return run(argv)
    except KeyboardInterrupt:
        logger.warning("⛔ 已被用户中断")
        return 1
    except Exception as e:
        return global_error_handler.handle_error(e, "程序异常退出")
    finally:
        _log_run_stats()


if __name__ == "__main__":
    sys.exit(main())
