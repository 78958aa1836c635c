"""通用工具模块"""
import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterator, List

logger = logging.getLogger('mbqkd')


class PerformanceMonitor:
    """性能监控器：按操作名记录耗时（秒）"""

    MAX_SAMPLES = 100

    def __init__(self):
        self.metrics: Dict[str, List[float]] = {}
        self._started: Dict[str, float] = {}
        self._counter = 0

    def start_timer(self, operation: str) -> str:
        """开始计时，返回计时器 ID"""
        self._counter += 1
        timer_id = f"{operation}#{self._counter}"
        self._started[timer_id] = time.perf_counter()
        return timer_id

    def end_timer(self, timer_id: str) -> float:
        """结束计时，未知 ID 返回 0"""
        start_time = self._started.pop(timer_id, None)
        if start_time is None:
            return 0.0

        duration = time.perf_counter() - start_time
        operation = timer_id.rsplit('#', 1)[0]
        samples = self.metrics.setdefault(operation, [])
        samples.append(duration)
        if len(samples) > self.MAX_SAMPLES:
            del samples[:-self.MAX_SAMPLES]
        return duration

    @contextmanager
    def measure(self, operation: str) -> Iterator[Dict[str, float]]:
        """with 语句计时；退出后 result['duration'] 为本次耗时"""
        result = {'duration': 0.0}
        timer_id = self.start_timer(operation)
        try:
            yield result
        finally:
            result['duration'] = self.end_timer(timer_id)
            logger.debug(f"⏱️ {operation} 耗时 {result['duration']:.3f}s")

    def get_stats(self) -> Dict[str, Dict[str, float]]:
        """获取统计信息"""
        stats = {}
        for operation, times in self.metrics.items():
            if times:
                stats[operation] = {
                    'count': len(times),
                    'average': sum(times) / len(times),
                    'min': min(times),
                    'max': max(times),
                    'total': sum(times),
                }
        return stats


global_performance_monitor = PerformanceMonitor()
