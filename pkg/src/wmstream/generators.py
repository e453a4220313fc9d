"""Reproducible stream synthesis: graph families, weight assignment,
stream ordering, and dynamic-stream churn."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .stream_io import (
    DELETE,
    DYNAMIC,
    INSERT,
    INSERT_ONLY,
    StreamHeader,
    StreamUpdate,
)

FAMILIES = ("forest-union", "grid", "erdos-renyi")
WEIGHT_DISTS = ("uniform-int", "powerlaw", "constant")
ORDERS = ("as-generated", "shuffled", "heavy-first", "light-first")


@dataclass(frozen=True)
class GenConfig:
    family: str
    n: int = 0
    rows: int = 0
    cols: int = 0
    nu: int = 1
    p: float = 0.0
    weight_dist: str = "uniform-int"
    wmax: float = 8.0
    alpha: float = 2.0
    order: str = "as-generated"
    dynamic_churn: float = 0.0
    seed: int = 0

    def summary(self) -> str:
        if self.family == "grid":
            shape = f"{self.rows}x{self.cols}"
        elif self.family == "erdos-renyi":
            shape = f"n={self.n},p={self.p}"
        else:
            shape = f"n={self.n},nu={self.nu}"
        return (
            f"{self.family}({shape},w={self.weight_dist}:{self.wmax},"
            f"order={self.order},churn={self.dynamic_churn},seed={self.seed})"
        )


def _validate(config: GenConfig) -> None:
    if config.family not in FAMILIES:
        raise ParameterError(f"unknown family {config.family!r}")
    if config.weight_dist not in WEIGHT_DISTS:
        raise ParameterError(f"unknown weight distribution {config.weight_dist!r}")
    if config.order not in ORDERS:
        raise ParameterError(f"unknown order {config.order!r}")
    if config.family == "grid":
        if config.rows < 1 or config.cols < 1:
            raise ParameterError("grid needs rows >= 1 and cols >= 1")
    elif config.n < 1:
        raise ParameterError(f"n must be >= 1, got {config.n}")
    if config.family == "forest-union" and config.nu < 1:
        raise ParameterError(f"nu must be >= 1, got {config.nu}")
    if config.family == "erdos-renyi" and not (0.0 <= config.p <= 1.0):
        raise ParameterError(f"p must be in [0, 1], got {config.p}")
    if config.wmax < 1.0:
        raise ParameterError(f"wmax must be >= 1, got {config.wmax}")
    if not (0.0 <= config.dynamic_churn <= 1.0):
        raise ParameterError(f"churn must be in [0, 1], got {config.dynamic_churn}")


def _random_spanning_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # Kruskal on a randomly permuted complete-graph edge list
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    rng.shuffle(pairs)
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
            if len(tree) == n - 1:
                break
    return tree


def _family_edges(config: GenConfig, rng: random.Random) -> tuple[int, list[tuple[int, int]]]:
    if config.family == "forest-union":
        seen = set()
        edges = []
        for _ in range(config.nu):
            for u, v in _random_spanning_tree(config.n, rng):
                key = (u, v) if u < v else (v, u)
                if key not in seen:
                    seen.add(key)
                    edges.append(key)
        return config.n, edges
    if config.family == "grid":
        rows, cols = config.rows, config.cols

        def vid(r: int, c: int) -> int:
            return r * cols + c + 1

        edges = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((vid(r, c), vid(r, c + 1)))
                if r + 1 < rows:
                    edges.append((vid(r, c), vid(r + 1, c)))
        return rows * cols, edges
    # erdos-renyi
    edges = [
        (u, v)
        for u in range(1, config.n + 1)
        for v in range(u + 1, config.n + 1)
        if rng.random() < config.p
    ]
    return config.n, edges


def _draw_weight(config: GenConfig, rng: random.Random) -> float:
    if config.weight_dist == "constant":
        return 1.0
    if config.weight_dist == "uniform-int":
        return float(rng.randint(1, int(config.wmax)))
    # powerlaw: Pareto(alpha) floored at 1 and capped at wmax
    w = rng.paretovariate(config.alpha)
    return min(float(config.wmax), max(1.0, w))


def generate(config: GenConfig) -> tuple[StreamHeader, list[StreamUpdate]]:
    """Produce an insertion-only stream; deterministic per (config, seed)."""
    _validate(config)
    rng = random.Random(config.seed)
    n, pairs = _family_edges(config, rng)
    wmax = 1.0 if config.weight_dist == "constant" else float(config.wmax)
    updates = [
        StreamUpdate(INSERT, u, v, _draw_weight(config, rng)) for u, v in pairs
    ]

    if config.order == "shuffled":
        rng.shuffle(updates)
    elif config.order == "heavy-first":
        updates.sort(key=lambda e: (-e.w, e.u, e.v))
    elif config.order == "light-first":
        updates.sort(key=lambda e: (e.w, e.u, e.v))

    header = StreamHeader(n, wmax, INSERT_ONLY)
    if config.dynamic_churn > 0.0:
        return dynamify(header, updates, config.dynamic_churn, config.seed + 1)
    return header, updates


def dynamify(
    header: StreamHeader,
    updates: Sequence[StreamUpdate],
    churn: float,
    seed: int,
) -> tuple[StreamHeader, list[StreamUpdate]]:
    """Turn an insertion-only stream into a dynamic one by giving a churn
    fraction of edges a delete + re-insert pair at random later positions.
    The replayed final snapshot is unchanged."""
    if not (0.0 <= churn <= 1.0):
        raise ParameterError(f"churn must be in [0, 1], got {churn}")
    if any(upd.op != INSERT for upd in updates):
        raise ParameterError("dynamify input must be insertion-only")

    rng = random.Random(seed)
    out = list(updates)
    k = round(churn * len(out))
    if k == 0:
        return header, out

    chosen = rng.sample(range(len(updates)), k)
    for orig_idx in sorted(chosen):
        upd = updates[orig_idx]
        pos = out.index(upd)
        j1 = rng.randint(pos + 1, len(out))
        out.insert(j1, StreamUpdate(DELETE, upd.u, upd.v, upd.w))
        j2 = rng.randint(j1 + 1, len(out))
        out.insert(j2, StreamUpdate(INSERT, upd.u, upd.v, upd.w))
    return StreamHeader(header.n, header.wmax, DYNAMIC), out
