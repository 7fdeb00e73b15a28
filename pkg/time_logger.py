import datetime
import functools
import os
import threading
import time

import pandas as pd

from config import LOG_DIR, LOGGING_TIME_USAGE


class TimeUsageLogger:
    """Собирает длительности проверок (свипы по сетке, фаззинг, прямой метод)."""

    def __init__(self, enabled: bool = LOGGING_TIME_USAGE):
        self.enabled = enabled
        self.data = []
        self._lock = threading.Lock()
        self.run_timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")

    def log_time(self, task_name: str, duration_seconds: float) -> None:
        """Сохраняет длительность одной задачи."""
        if not self.enabled:
            return
        with self._lock:
            self.data.append({
                "task_name": task_name,
                "duration_seconds": duration_seconds,
            })

    def reset(self) -> None:
        with self._lock:
            self.data = []

    def summary(self) -> pd.DataFrame:
        """Агрегирует лог по задачам: суммарное, среднее, min/max время и доля."""
        full_log_df = pd.DataFrame(self.data, columns=["task_name", "duration_seconds"])
        agg_report = full_log_df.groupby("task_name").agg(
            total_duration_sec=("duration_seconds", "sum"),
            call_count=("task_name", "size"),
            avg_duration_sec=("duration_seconds", "mean"),
            min_duration_sec=("duration_seconds", "min"),
            max_duration_sec=("duration_seconds", "max"),
        ).reset_index()
        agg_report = agg_report.sort_values(by="total_duration_sec", ascending=False)

        total_time_overall = agg_report["total_duration_sec"].sum()
        if total_time_overall > 0:
            agg_report["percentage_of_total_time"] = \
                (agg_report["total_duration_sec"] / total_time_overall * 100).round(2)
        return agg_report

    def save_reports(self, output_dir: str = LOG_DIR, verbose: bool = False):
        """Сохраняет полный и агрегированный отчёты по времени в output_dir."""
        if not self.enabled or not self.data:
            return None
        os.makedirs(output_dir, exist_ok=True)

        full_log_path = os.path.join(output_dir, f"{self.run_timestamp}_time_usage_full_log.csv")
        pd.DataFrame(self.data).to_csv(full_log_path, index=False, encoding="utf-8")

        agg_report = self.summary()
        agg_report_path = os.path.join(output_dir, f"{self.run_timestamp}_time_usage_summary.csv")
        agg_report.to_csv(agg_report_path, index=False, encoding="utf-8")
        print(f"[INFO] Тайминги сохранены: {agg_report_path}")

        if verbose:
            display_df = agg_report.copy()
            for col in ["total_duration_sec", "avg_duration_sec", "min_duration_sec", "max_duration_sec"]:
                display_df[col] = display_df[col].apply(lambda x: f"{x:.3f}s")
            print("\n--- Сводный отчет по времени выполнения ---")
            print(display_df.to_string(index=False))
        return agg_report_path


time_logger = TimeUsageLogger()


def timed(func):
    """Декоратор для измерения времени выполнения функции."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        if not time_logger.enabled:
            return func(*args, **kwargs)
        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            time_logger.log_time(func.__name__, time.perf_counter() - start_time)

    return wrapper
