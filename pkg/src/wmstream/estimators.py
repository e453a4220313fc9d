"""Per-substream cardinality estimators.

The contract: an estimator consumes an unweighted edge stream and returns
an estimate ``value`` with ``value <= MCM <= lambda * value``. Two
deterministic references ship here: a streaming greedy maximal matching
(lambda = 2, insert-only) and an exact-offline estimator (lambda = 1,
handles deletes by retaining the surviving edge set and asking the oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapabilityError, ParameterError, StreamError
from .oracle import exact_mcm
from .stream_io import DELETE, DYNAMIC, INSERT, GraphSnapshot

EXACT_OFFLINE = "exact"
GREEDY = "greedy"

KINDS = (EXACT_OFFLINE, GREEDY)


@dataclass(frozen=True)
class EstimatorSpec:
    lam: float
    delta_prime: float
    supports_deletes: bool

    def __post_init__(self):
        if self.lam < 1.0:
            raise ParameterError(f"lambda must be >= 1, got {self.lam}")
        if not (0.0 < self.delta_prime < 1.0):
            raise ParameterError(
                f"delta_prime must be in (0, 1), got {self.delta_prime}"
            )


@dataclass(frozen=True)
class McmEstimate:
    value: float
    words_stored: int
    spec: EstimatorSpec


class GreedyEstimator:
    """Maximal matching built greedily in stream order: an edge is taken
    iff both endpoints are currently unmatched. 2-approximation to MCM.
    Cannot un-match, so deletes are refused."""

    def __init__(self, n: int, delta_prime: float):
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        self.n = n
        self.spec = EstimatorSpec(2.0, delta_prime, supports_deletes=False)
        self._matched: set[int] = set()
        self._matching: list[tuple[int, int]] = []

    def update(self, op: str, u: int, v: int) -> None:
        if op == DELETE:
            raise CapabilityError("greedy estimator cannot process deletes")
        if u not in self._matched and v not in self._matched:
            self._matched.add(u)
            self._matched.add(v)
            self._matching.append((u, v))

    @property
    def words_stored(self) -> int:
        # the matching only grows, so current size is the peak
        return len(self._matching)

    def finalize(self) -> McmEstimate:
        return McmEstimate(float(len(self._matching)), self.words_stored, self.spec)


class ExactOfflineEstimator:
    """Retains the surviving edge multiset and computes the exact MCM at
    finalize via the oracle. lambda = 1 but deliberately not sublinear in
    space; the words counter makes that visible."""

    def __init__(self, n: int, delta_prime: float):
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        self.n = n
        self.spec = EstimatorSpec(1.0, delta_prime, supports_deletes=True)
        self._mult: dict[tuple[int, int], int] = {}
        self._peak = 0

    def update(self, op: str, u: int, v: int) -> None:
        key = (u, v) if u < v else (v, u)
        if op == INSERT:
            self._mult[key] = self._mult.get(key, 0) + 1
            self._peak = max(self._peak, len(self._mult))
        else:
            count = self._mult.get(key, 0)
            if count <= 0:
                raise StreamError(f"delete of absent edge {key}")
            if count == 1:
                del self._mult[key]
            else:
                self._mult[key] = count - 1

    @property
    def words_stored(self) -> int:
        return self._peak

    def finalize(self) -> McmEstimate:
        edges = tuple(sorted((u, v, 1.0) for (u, v) in self._mult))
        result = exact_mcm(GraphSnapshot(self.n, edges))
        return McmEstimate(float(result.value), self._peak, self.spec)


def make_estimator(kind: str, n: int, delta_prime: float, model: str):
    """Instantiate a fresh estimator, refusing capability mismatches."""
    if kind == GREEDY:
        if model == DYNAMIC:
            raise CapabilityError("greedy estimator does not support dynamic streams")
        return GreedyEstimator(n, delta_prime)
    if kind == EXACT_OFFLINE:
        return ExactOfflineEstimator(n, delta_prime)
    raise ParameterError(f"unknown estimator kind {kind!r}")


def lambda_for(kind: str) -> float:
    if kind == GREEDY:
        return 2.0
    if kind == EXACT_OFFLINE:
        return 1.0
    raise ParameterError(f"unknown estimator kind {kind!r}")
