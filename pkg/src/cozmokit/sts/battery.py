"""Battery runner and report rendering.

Rows always come back in the fixed table order, whatever order the
individual tests finish in.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Callable, Dict, Optional, Tuple

from ..bitseq import BitSequence
from ..errors import InputError, ParameterError
from . import stattests as st
from .stattests import TestResult, Verdict

TEST_ORDER = (
    "Frequency",
    "Cumulative Sums",
    "Approximate Entropy",
    "Linear Complexity",
    "Serial",
    "Longest Run of Ones",
    "Runs",
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class BatteryConfig:
    alpha: float = st.DEFAULT_ALPHA
    n: Optional[int] = None  # None: test the whole sequence
    m_serial: int = 16
    m_apen: int = 10
    M_lincomp: int = 500

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.n is not None and self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")


def _cusum_both(seq, alpha):
    fwd = st.cusum_test(seq, "forward", alpha)
    bwd = st.cusum_test(seq, "backward", alpha)
    return st.judge(
        "Cumulative Sums",
        fwd.pvalues + bwd.pvalues,
        alpha,
        params={"modes": ["forward", "backward"]},
        statistics={"z_forward": fwd.statistics["z"], "z_backward": bwd.statistics["z"]},
        warnings=fwd.warnings,
    )


def _row_runners(config: BatteryConfig) -> Dict[str, Callable[[BitSequence], TestResult]]:
    a = config.alpha
    return {
        "Frequency": lambda s: st.frequency_test(s, a),
        "Cumulative Sums": lambda s: _cusum_both(s, a),
        "Approximate Entropy": lambda s: st.approx_entropy_test(s, config.m_apen, a),
        "Linear Complexity": lambda s: st.linear_complexity_test(s, config.M_lincomp, a),
        "Serial": lambda s: st.serial_test(s, config.m_serial, a),
        "Longest Run of Ones": lambda s: st.longest_run_test(s, a),
        "Runs": lambda s: st.runs_test(s, a),
    }


def _guarded(name, fn, seq, alpha) -> TestResult:
    try:
        return fn(seq)
    except (InputError, ParameterError) as exc:
        return st.not_applicable(name, str(exc), alpha)


@dataclass(frozen=True)
class TestReport:
    __test__ = False

    rows: Tuple[TestResult, ...]
    config: BatteryConfig
    n: int
    digest: str

    @property
    def passed(self) -> bool:
        """True iff no applicable row failed and at least one row applied."""
        applicable = [r for r in self.rows if r.verdict is not Verdict.NOT_APPLICABLE]
        return bool(applicable) and all(r.verdict is Verdict.PASS for r in applicable)

    def row(self, name: str) -> TestResult:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "alpha": self.config.alpha,
            "n": self.n,
            "input_digest": self.digest,
            "config": asdict(self.config),
            "overall": "pass" if self.passed else "fail",
            "tests": [r.to_dict() for r in self.rows],
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def render_text(self) -> str:
        cells = []
        for r in self.rows:
            if r.verdict is Verdict.NOT_APPLICABLE:
                pv, word = "-", "Not applicable"
            else:
                if len(r.pvalues) == 1:
                    pv = f"{r.pvalues[0]:.6f}"
                else:
                    pv = " ".join(f"P{i}-{p:.6f}" for i, p in enumerate(r.pvalues, 1))
                word = "Success" if r.passed else "Failure"
            cells.append((r.name, pv, word))
        head = ("Statistical Test", "p-value", "Success/failure")
        widths = [max(len(c[i]) for c in cells + [head]) for i in range(3)]
        fmt = "{:<%d}  {:<%d}  {}" % (widths[0], widths[1])
        lines = [fmt.format(*head), fmt.format("-" * widths[0], "-" * widths[1], "-" * widths[2])]
        lines += [fmt.format(*c) for c in cells]
        lines.append("")
        lines.append(f"n = {self.n}, alpha = {self.config.alpha}, overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def run_battery(seq: BitSequence, config: BatteryConfig = BatteryConfig(), jobs: int = 1) -> TestReport:
    """Run all seven tests; rows that cannot run are marked not applicable."""
    if config.n is not None:
        if config.n > len(seq):
            raise ValueError(f"config asks for {config.n} bits but the sequence has {len(seq)}")
        seq = seq[: config.n]
    runners = _row_runners(config)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_guarded, name, runners[name], seq, config.alpha) for name in TEST_ORDER]
            rows = tuple(f.result() for f in futures)
    else:
        rows = tuple(_guarded(name, runners[name], seq, config.alpha) for name in TEST_ORDER)
    return TestReport(rows, config, len(seq), seq.digest())


def report_schema() -> dict:
    """JSON Schema for :meth:`TestReport.to_dict` output."""
    text = resources.files(__package__).joinpath("report.schema.json").read_text()
    return json.loads(text)
