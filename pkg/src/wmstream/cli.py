"""Command-line harness: estimate, oracle, gen, and eval subcommands."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import generators, oracle, reduction, stream_io
from .errors import (
    InvariantError,
    ParameterError,
    ParseError,
    WmStreamError,
    exit_code_for,
)
from .estimators import EXACT_OFFLINE, GREEDY, KINDS, lambda_for

REL_SLACK = 1e-9

CSV_COLUMNS = [
    "config",
    "epsilon",
    "estimator",
    "lambda",
    "estimate",
    "oracle_mwm",
    "ratio",
    "bound",
    "lemma1_ok",
    "obs_ok",
    "lemma2_ok",
    "total_words",
    "status",
]


def _read_stream(path: str):
    with open(path, "rb") as fh:
        return stream_io.parse_stream(fh.read())


def cmd_estimate(args) -> int:
    header, updates = _read_stream(args.stream)
    report = reduction.run(header, updates, args.epsilon, args.delta, args.estimator)
    payload = reduction.report_to_dict(report)

    if args.verify:
        snapshot = stream_io.replay(header, updates)
        result = oracle.exact_mwm(snapshot)
        lam = lambda_for(args.estimator)
        bound = 2.0 * lam * (1.0 + args.epsilon)
        ok = (
            report.estimate <= result.value * (1.0 + REL_SLACK)
            and result.value <= bound * report.estimate * (1.0 + REL_SLACK)
        ) or (report.estimate == 0.0 and result.value == 0.0)
        payload["oracle_mwm"] = result.value
        payload["bound"] = bound
        payload["sandwich_ok"] = ok

    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.verify and not payload["sandwich_ok"]:
        raise InvariantError("approximation sandwich violated")
    return 0


def cmd_oracle(args) -> int:
    header, updates = _read_stream(args.stream)
    snapshot = stream_io.replay(header, updates)
    if args.mode == "mwm":
        result = oracle.exact_mwm(snapshot)
        payload = {"mode": "mwm", "value": result.value, "witness": list(result.witness)}
    elif args.mode == "mcm":
        result = oracle.exact_mcm(snapshot)
        payload = {"mode": "mcm", "value": result.value, "witness": list(result.witness)}
    else:
        payload = {"mode": "arboricity", "value": oracle.arboricity(snapshot)}
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_gen(args) -> int:
    config = generators.GenConfig(
        family=args.family,
        n=args.n,
        rows=args.rows,
        cols=args.cols,
        nu=args.nu,
        p=args.p,
        weight_dist=args.weights,
        wmax=args.wmax,
        alpha=args.alpha,
        order=args.order,
        dynamic_churn=args.churn,
        seed=args.seed,
    )
    header, updates = generators.generate(config)
    text = stream_io.serialize(header, updates)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# --- eval suite -----------------------------------------------------------

_SUITE_KEYS = {
    "family", "n", "rows", "cols", "nu", "p", "weights", "wmax", "alpha",
    "order", "churn", "epsilon", "delta", "estimator", "seed", "reps",
}


@dataclass(frozen=True)
class SuiteRow:
    config: generators.GenConfig
    epsilon: float
    delta: float
    estimator: str


def parse_suite(text: str) -> list[SuiteRow]:
    """Flat key=value blocks separated by blank lines; one block expands to
    ``reps`` rows with consecutive seeds."""
    rows: list[SuiteRow] = []
    block: dict[str, str] = {}

    def flush():
        if not block:
            return
        unknown = set(block) - _SUITE_KEYS
        if unknown:
            raise ParseError(f"unknown suite keys: {sorted(unknown)}")
        if "family" not in block or "estimator" not in block:
            raise ParseError("suite block needs at least family= and estimator=")
        estimator = block["estimator"]
        if estimator not in KINDS:
            raise ParseError(f"unknown estimator {estimator!r}")
        base_seed = int(block.get("seed", "0"))
        reps = int(block.get("reps", "1"))
        for rep in range(reps):
            config = generators.GenConfig(
                family=block["family"],
                n=int(block.get("n", "0")),
                rows=int(block.get("rows", "0")),
                cols=int(block.get("cols", "0")),
                nu=int(block.get("nu", "1")),
                p=float(block.get("p", "0")),
                weight_dist=block.get("weights", "uniform-int"),
                wmax=float(block.get("wmax", "8")),
                alpha=float(block.get("alpha", "2.0")),
                order=block.get("order", "as-generated"),
                dynamic_churn=float(block.get("churn", "0")),
                seed=base_seed + rep,
            )
            rows.append(
                SuiteRow(
                    config,
                    float(block.get("epsilon", "0.5")),
                    float(block.get("delta", "0.1")),
                    estimator,
                )
            )
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        key, _, value = line.partition("=")
        block[key.strip()] = value.strip()
    flush()
    return rows


def run_suite_row(row: SuiteRow) -> dict:
    """Execute one eval row; pure function of the row, safe to parallelize."""
    started = time.perf_counter()
    out = {
        "config": row.config.summary(),
        "epsilon": row.epsilon,
        "estimator": row.estimator,
        "lambda": lambda_for(row.estimator),
        "estimate": "",
        "oracle_mwm": "",
        "ratio": "",
        "bound": "",
        "lemma1_ok": "",
        "obs_ok": "",
        "lemma2_ok": "",
        "total_words": "",
        "status": "ok",
        "elapsed": 0.0,
        "exit_code": 0,
    }
    try:
        header, updates = generators.generate(row.config)
        report = reduction.run(header, updates, row.epsilon, row.delta, row.estimator)
        snapshot = stream_io.replay(header, updates)
        result = oracle.exact_mwm(snapshot)
        lam = lambda_for(row.estimator)
        bound = 2.0 * lam * (1.0 + row.epsilon)
        if report.estimate == 0.0:
            ratio = 1.0 if result.value == 0.0 else float("inf")
        else:
            ratio = result.value / report.estimate
        lemma1_ok = reduction.check_lemma1(report)
        obs_ok = reduction.check_observations(report)
        lemma2_ok = reduction.check_lemma2(
            report, [w for _, _, w in result.witness], lam
        )
        sandwich_ok = 1.0 - REL_SLACK <= ratio <= bound * (1.0 + REL_SLACK)
        out.update(
            estimate=report.estimate,
            oracle_mwm=result.value,
            ratio=ratio,
            bound=bound,
            lemma1_ok=lemma1_ok,
            obs_ok=obs_ok,
            lemma2_ok=lemma2_ok,
            total_words=report.total_words,
        )
        if not (lemma1_ok and obs_ok and lemma2_ok and sandwich_ok):
            out["status"] = "invariant-failure"
            out["exit_code"] = 5
    except WmStreamError as exc:
        out["status"] = f"error:{type(exc).__name__}"
        out["exit_code"] = exit_code_for(exc)
    out["elapsed"] = time.perf_counter() - started
    return out


def render_suite_csv(results: list[dict]) -> str:
    """Fixed-column CSV plus a max-ratio-per-(estimator, epsilon) footer.
    Elapsed times are deliberately excluded so reruns are byte-identical."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for res in results:
        writer.writerow([res[col] for col in CSV_COLUMNS])
    worst: dict[tuple[str, float], float] = {}
    for res in results:
        if res["status"] == "ok" and res["ratio"] != "":
            key = (res["estimator"], res["epsilon"])
            worst[key] = max(worst.get(key, 0.0), res["ratio"])
    for (estimator, epsilon), ratio in sorted(worst.items()):
        buf.write(f"# max_ratio estimator={estimator} epsilon={epsilon} ratio={ratio}\n")
    return buf.getvalue()


def cmd_eval(args) -> int:
    with open(args.suite, "r", encoding="utf-8") as fh:
        rows = parse_suite(fh.read())

    if args.jobs > 1 and rows:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_suite_row, rows))
    else:
        results = [run_suite_row(row) for row in rows]

    text = render_suite_csv(results)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    for res in results:
        if res["exit_code"] != 0:
            sys.stderr.write(f"eval: {res['config']}: {res['status']}\n")
    codes = [res["exit_code"] for res in results if res["exit_code"] != 0]
    return codes[0] if codes else 0


# --- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wmstream",
        description="Streaming weighted-matching estimation via weight "
        "bucketing over pluggable cardinality estimators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate MWM weight of a stream file")
    p_est.add_argument("--stream", required=True)
    p_est.add_argument("--epsilon", type=float, required=True)
    p_est.add_argument("--delta", type=float, default=0.1)
    p_est.add_argument("--estimator", choices=KINDS, default=EXACT_OFFLINE)
    p_est.add_argument("--verify", action="store_true",
                       help="also run the exact oracle and check the sandwich")
    p_est.add_argument("--out")
    p_est.set_defaults(func=cmd_estimate)

    p_or = sub.add_parser("oracle", help="exact ground truth on a small stream")
    p_or.add_argument("--stream", required=True)
    p_or.add_argument("--mode", choices=["mwm", "mcm", "arboricity"], required=True)
    p_or.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate a reproducible stream")
    p_gen.add_argument("--family", choices=generators.FAMILIES, required=True)
    p_gen.add_argument("--n", type=int, default=0)
    p_gen.add_argument("--rows", type=int, default=0)
    p_gen.add_argument("--cols", type=int, default=0)
    p_gen.add_argument("--nu", type=int, default=1)
    p_gen.add_argument("--p", type=float, default=0.0)
    p_gen.add_argument("--weights", choices=generators.WEIGHT_DISTS,
                       default="uniform-int")
    p_gen.add_argument("--wmax", type=float, default=8.0)
    p_gen.add_argument("--alpha", type=float, default=2.0)
    p_gen.add_argument("--order", choices=generators.ORDERS, default="as-generated")
    p_gen.add_argument("--churn", type=float, default=0.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_gen)

    p_ev = sub.add_parser("eval", help="run a batch suite to a CSV report")
    p_ev.add_argument("--suite", required=True)
    p_ev.add_argument("--out")
    p_ev.add_argument("--jobs", type=int, default=1)
    p_ev.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WmStreamError as exc:
        sys.stderr.write(f"wmstream: {exc}\n")
        return exit_code_for(exc)
    except OSError as exc:
        sys.stderr.write(f"wmstream: {exc}\n")
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
