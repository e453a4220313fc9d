"""The weighted-to-cardinality reduction.

Each update fans out to the estimators of every level its weight reaches.
After the pass, a descending greedy combine turns the per-level cardinality
estimates into a weight estimate: iterating from the top level down,

    m_hat[i]  = max(m_hat[i+1], s_hat[i])
    delta[i]  = max(0, ceil(m_hat[i] - 2*b[i+1]))
    b[i]      = b[i+1] + delta[i]
    a[i]      = a[i+1] + thresholds[i] * delta[i]

and the final estimate is a[0].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import ParameterError
from .estimators import make_estimator
from .schedule import LevelSchedule, build_schedule, top_level
from .stream_io import StreamHeader, StreamUpdate


@dataclass(frozen=True)
class LevelState:
    level: int
    s_hat: float
    m_hat: float
    delta_count: int
    b: int
    a: float


@dataclass(frozen=True)
class RunReport:
    schedule: LevelSchedule
    levels: tuple[LevelState, ...]  # ordered top level down to 0
    estimate: float
    total_words: int = 0
    estimator: str = ""
    delta: float = 0.0
    delta_prime: float = 0.0
    level_words: tuple[int, ...] = field(default=())  # indexed by level, not serialized


def route_update(schedule: LevelSchedule, estimators: Sequence, update: StreamUpdate) -> None:
    """Forward the (unweighted) update to levels 0..top_level(w), inclusive."""
    top = top_level(schedule, update.w)
    for i in range(top + 1):
        estimators[i].update(update.op, update.u, update.v)


def combine(schedule: LevelSchedule, s_hats: Sequence[float]) -> RunReport:
    """Run the descending greedy combine on per-level estimates."""
    t = schedule.levels
    if len(s_hats) != t + 1:
        raise ParameterError(
            f"expected {t + 1} estimates, got {len(s_hats)}"
        )
    for s in s_hats:
        if not (math.isfinite(s) and s >= 0.0):
            raise ParameterError(f"estimates must be nonnegative, got {s}")

    levels: list[LevelState] = []
    m_hat_next = 0.0
    b_next = 0
    a_next = 0.0
    for i in range(t, -1, -1):
        s_hat = float(s_hats[i])
        m_hat = max(m_hat_next, s_hat)
        delta_count = max(0, math.ceil(m_hat - 2 * b_next))
        b = b_next + delta_count
        a = a_next + schedule.thresholds[i] * delta_count
        levels.append(LevelState(i, s_hat, m_hat, delta_count, b, a))
        m_hat_next, b_next, a_next = m_hat, b, a

    return RunReport(schedule, tuple(levels), estimate=levels[-1].a)


def run(
    header: StreamHeader,
    updates: Sequence[StreamUpdate],
    epsilon: float,
    delta: float,
    estimator_kind: str,
) -> RunReport:
    """One-pass end-to-end run: schedule, route, finalize, combine."""
    if not (0.0 < delta < 1.0):
        raise ParameterError(f"delta must be in (0, 1), got {delta}")
    schedule = build_schedule(epsilon, header.wmax)
    t = schedule.levels
    delta_prime = delta / (t + 1)
    estimators = [
        make_estimator(estimator_kind, header.n, delta_prime, header.model)
        for _ in range(t + 1)
    ]
    for upd in updates:
        route_update(schedule, estimators, upd)
    estimates = [est.finalize() for est in estimators]
    report = combine(schedule, [e.value for e in estimates])
    return replace(
        report,
        total_words=sum(e.words_stored for e in estimates),
        estimator=estimator_kind,
        delta=delta,
        delta_prime=delta_prime,
        level_words=tuple(e.words_stored for e in estimates),
    )


def check_lemma1(report: RunReport) -> bool:
    """b <= ceil(m_hat) and m_hat <= 2*b at every level. Exact integer
    comparison for integer estimates; the ceiling covers fractional ones."""
    return all(
        st.b <= math.ceil(st.m_hat) and st.m_hat <= 2 * st.b
        for st in report.levels
    )


def check_observations(report: RunReport, rel_tol: float = 1e-9) -> bool:
    """b is the exact suffix sum of delta; a the threshold-weighted suffix
    sum within relative tolerance."""
    thresholds = report.schedule.thresholds
    b_sum = 0
    a_sum = 0.0
    for st in report.levels:  # already ordered top level down to 0
        b_sum += st.delta_count
        a_sum += thresholds[st.level] * st.delta_count
        if st.b != b_sum:
            return False
        if abs(st.a - a_sum) > rel_tol * max(1.0, abs(a_sum)):
            return False
    return True


def check_lemma2(
    report: RunReport,
    matching_weights: Sequence[float],
    lam: float,
) -> bool:
    """Per level j: b_j <= #{e in M* : w(e) >= thresholds[j]} <= 2*lam*b_j,
    where matching_weights are the edge weights of an optimal weighted
    matching."""
    thresholds = report.schedule.thresholds
    for st in report.levels:
        count = sum(1 for w in matching_weights if w >= thresholds[st.level])
        if not (st.b <= count <= 2 * lam * st.b):
            return False
    return True


def report_to_dict(report: RunReport) -> dict:
    return {
        "epsilon": report.schedule.epsilon,
        "wmax": report.schedule.wmax,
        "T": report.schedule.levels,
        "estimate": report.estimate,
        "delta": report.delta,
        "delta_prime": report.delta_prime,
        "estimator": report.estimator,
        "total_words": report.total_words,
        "levels": [
            {
                "i": st.level,
                "threshold": report.schedule.thresholds[st.level],
                "s_hat": st.s_hat,
                "m_hat": st.m_hat,
                "delta_i": st.delta_count,
                "b": st.b,
                "a": st.a,
            }
            for st in report.levels
        ],
    }


def report_to_json(report: RunReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)
