"""错误处理模块"""
import json
import logging
import traceback
from enum import Enum
from typing import Callable, Dict, Optional

logger = logging.getLogger('mbqkd')


class ErrorType(Enum):
    CONTRACT_VIOLATION = "contract_violation"
    UNSUPPORTED_MEASUREMENT = "unsupported_measurement"
    CLASSIFICATION_ERROR = "classification_error"
    VALIDATION_ERROR = "validation_error"
    CONFIGURATION_ERROR = "configuration_error"
    IO_ERROR = "io_error"
    UNKNOWN_ERROR = "unknown_error"


class QKDError(Exception):
    def __init__(self, message: str, error_type: ErrorType = ErrorType.UNKNOWN_ERROR):
        super().__init__(message)
        self.error_type = error_type
        self.message = message


class ContractViolationError(QKDError):
    """态未归一化、矩阵非幺正等前置条件被破坏"""

    def __init__(self, message: str):
        super().__init__(message, ErrorType.CONTRACT_VIOLATION)


class UnsupportedMeasurementError(QKDError):
    """被测一侧的光子数不是 1"""

    def __init__(self, message: str):
        super().__init__(message, ErrorType.UNSUPPORTED_MEASUREMENT)


class PatternClassificationError(QKDError):
    """探测图样不属于四个符号类（例如 D1H+D2H），说明内部有 bug"""

    def __init__(self, message: str):
        super().__init__(message, ErrorType.CLASSIFICATION_ERROR)


class ValidationError(QKDError, ValueError):
    def __init__(self, message: str, error_type: ErrorType = ErrorType.VALIDATION_ERROR):
        super().__init__(message, error_type)


# 命令行退出码：参数校验失败为 2，其余运行时错误为 1
EXIT_CODES: Dict[ErrorType, int] = {
    ErrorType.VALIDATION_ERROR: 2,
    ErrorType.CONFIGURATION_ERROR: 2,
}


class ErrorHandler:
    """错误处理器"""

    def __init__(self):
        self.error_counts: Dict[ErrorType, int] = {}
        self.error_callbacks: Dict[ErrorType, Callable] = {}

    def register_error_callback(self, error_type: ErrorType, callback: Callable):
        self.error_callbacks[error_type] = callback

    def handle_error(self, error: Exception, context: str = "",
                     error_type: Optional[ErrorType] = None) -> int:
        """记录错误并返回对应的进程退出码"""
        if error_type is None:
            error_type = self.classify_error(error)

        self._log_error(error, error_type, context)
        self.error_counts[error_type] = self.error_counts.get(error_type, 0) + 1

        if error_type in self.error_callbacks:
            try:
                self.error_callbacks[error_type](error, context)
            except Exception as callback_error:
                logger.error(f"❌ 错误回调执行失败: {callback_error}")

        return self.exit_code(error_type)

    def classify_error(self, error: Exception) -> ErrorType:
        if isinstance(error, QKDError):
            return error.error_type
        elif isinstance(error, json.JSONDecodeError):
            return ErrorType.VALIDATION_ERROR
        elif isinstance(error, OSError):
            return ErrorType.IO_ERROR
        elif isinstance(error, ValueError):
            return ErrorType.VALIDATION_ERROR
        else:
            return ErrorType.UNKNOWN_ERROR

    def exit_code(self, error_type: ErrorType) -> int:
        return EXIT_CODES.get(error_type, 1)

    def _log_error(self, error: Exception, error_type: ErrorType, context: str):
        error_msg = f"[{error_type.value}] {context}: {error}"

        if error_type in (ErrorType.CONTRACT_VIOLATION, ErrorType.CLASSIFICATION_ERROR):
            logger.critical(error_msg)
        elif error_type in (ErrorType.VALIDATION_ERROR, ErrorType.CONFIGURATION_ERROR):
            logger.warning(error_msg)
        else:
            logger.error(error_msg)

        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"错误堆栈:\n{traceback.format_exc()}")


global_error_handler = ErrorHandler()


def default_classification_callback(error: Exception, context: str):
    logger.critical(f"🐛 探测图样分类失败，物理引擎可能存在缺陷: {context}")


global_error_handler.register_error_callback(ErrorType.CLASSIFICATION_ERROR, default_classification_callback)
