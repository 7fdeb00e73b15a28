import os

import pytest

from time_logger import TimeUsageLogger


def test_summary_and_reports(tmp_path):
    logger = TimeUsageLogger(enabled=True)
    logger.log_time("check_axioms", 0.5)
    logger.log_time("check_axioms", 1.5)
    logger.log_time("residual_sweep", 1.0)

    summary = logger.summary()
    assert summary["task_name"].tolist() == ["check_axioms", "residual_sweep"]
    assert summary["call_count"].tolist() == [2, 1]
    assert summary["percentage_of_total_time"].sum() == pytest.approx(100.0)

    path = logger.save_reports(str(tmp_path))
    assert os.path.exists(path)


def test_disabled_logger_records_nothing(tmp_path):
    logger = TimeUsageLogger(enabled=False)
    logger.log_time("check_axioms", 0.5)
    assert logger.data == []
    assert logger.save_reports(str(tmp_path)) is None
