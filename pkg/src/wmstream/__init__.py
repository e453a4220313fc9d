"""Streaming weighted-matching estimation toolkit.

Reduces weighted matching estimation to per-weight-class cardinality
estimation: updates fan out to nested substreams by weight threshold, and
a descending greedy combine turns the per-level cardinality estimates into
a weight estimate with a 2*lambda*(1+epsilon) guarantee.
"""

from .errors import (
    CapabilityError,
    CapacityError,
    InvariantError,
    ParameterError,
    ParseError,
    StreamError,
    WeightRangeError,
    WmStreamError,
)
from .estimators import EstimatorSpec, McmEstimate, lambda_for, make_estimator
from .generators import GenConfig, dynamify, generate
from .oracle import OracleResult, arboricity, exact_mcm, exact_mwm
from .reduction import (
    LevelState,
    RunReport,
    check_lemma1,
    check_lemma2,
    check_observations,
    combine,
    report_to_dict,
    report_to_json,
    route_update,
    run,
)
from .schedule import LevelSchedule, build_schedule, top_level
from .stream_io import (
    GraphSnapshot,
    StreamHeader,
    StreamUpdate,
    export_snapshot,
    parse_stream,
    replay,
    serialize,
    snapshot_stream,
)

__version__ = "0.1.0"
