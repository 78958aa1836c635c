"""工具模块"""
from .common import PerformanceMonitor, global_performance_monitor
from .data_validator import DataValidator
from .error_handler import (
    ContractViolationError,
    ErrorHandler,
    ErrorType,
    PatternClassificationError,
    QKDError,
    UnsupportedMeasurementError,
    ValidationError,
    global_error_handler,
)
from .formatter import format_detection_report, format_number, format_sift_summary
from .logger import setup_logger

__all__ = [
    'PerformanceMonitor',
    'global_performance_monitor',
    'DataValidator',
    'ContractViolationError',
    'ErrorHandler',
    'ErrorType',
    'PatternClassificationError',
    'QKDError',
    'UnsupportedMeasurementError',
    'ValidationError',
    'global_error_handler',
    'format_detection_report',
    'format_number',
    'format_sift_summary',
    'setup_logger',
]
