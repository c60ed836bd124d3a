from .battery import TEST_ORDER, BatteryConfig, TestReport, report_schema, run_battery
from .special import erfc, igam, igamc, normal_cdf
from .stattests import (
    TestResult,
    Verdict,
    approx_entropy_test,
    berlekamp_massey,
    cusum_test,
    frequency_test,
    linear_complexity_test,
    longest_run_test,
    runs_test,
    serial_test,
)
