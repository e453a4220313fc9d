"""Shared corpus builders for the randomized suites."""

from wmstream import GenConfig, generate, replay

ORACLE_EDGE_CAP = 24


def corpus_configs():
    """Small-instance corpus: forest unions, grids, and sparse random
    graphs, with uniform integer weights in [1, 64]."""
    configs = []
    for nu in (1, 2, 3):
        for n in (6, 8, 10):
            for seed in range(10):
                configs.append(
                    GenConfig(
                        family="forest-union",
                        n=n,
                        nu=nu,
                        weight_dist="uniform-int",
                        wmax=64.0,
                        order="shuffled",
                        seed=1000 * nu + 100 * n + seed,
                    )
                )
    for rows, cols in ((2, 2), (2, 3), (3, 3), (3, 4)):
        for seed in range(10):
            configs.append(
                GenConfig(
                    family="grid",
                    rows=rows,
                    cols=cols,
                    weight_dist="uniform-int",
                    wmax=64.0,
                    order="shuffled",
                    seed=7000 + 100 * rows + 10 * cols + seed,
                )
            )
    for n in (6, 8, 10):
        for p in (0.2, 0.35):
            for seed in range(7):
                configs.append(
                    GenConfig(
                        family="erdos-renyi",
                        n=n,
                        p=p,
                        weight_dist="uniform-int",
                        wmax=64.0,
                        order="shuffled",
                        seed=9000 + 100 * n + seed,
                    )
                )
    return configs


def corpus_instances():
    """Generated corpus streams whose final snapshots fit the oracle cap."""
    out = []
    for config in corpus_configs():
        header, updates = generate(config)
        if len(replay(header, updates).edges) <= ORACLE_EDGE_CAP:
            out.append((config, header, updates))
    return out
