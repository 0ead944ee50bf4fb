"""Seeded small random instances for the oracle sweeps."""

from __future__ import annotations

import random

from popmatch.core import Instance
from popmatch.generate import GenParams, generate


def correlated(rng: random.Random, n_app: int, n_jobs: int, max_len: int, tie_prob: float,
               weights: list[int]) -> Instance:
    """Lists drawn from a shared skewed popularity order, so applicants collide."""
    popularity = [rng.random() ** 2 for _ in range(n_jobs)]
    prefs, ws = [], []
    for _ in range(n_app):
        ws.append(rng.choice(weights))
        length = rng.randint(0, min(max_len, n_jobs))
        keyed = sorted(range(n_jobs), key=lambda p: popularity[p] * rng.random() ** 0.5,
                       reverse=True)
        groups: list[list[int]] = []
        for p in keyed[:length]:
            if groups and rng.random() < tie_prob:
                groups[-1].append(p)
            else:
                groups.append([p])
        prefs.append(tuple(tuple(g) for g in groups))
    return Instance(tuple(f"a{i + 1}" for i in range(n_app)), tuple(ws),
                    tuple(f"j{i + 1}" for i in range(n_jobs)), tuple(prefs))


def random_weights(rng: random.Random, k: int) -> list[int]:
    style = rng.random()
    if style < 0.3:
        return [2**i for i in range(k)]
    if style < 0.6:
        base = rng.randint(3, 6)
        return [base + i for i in range(k)]
    return rng.sample(range(1, 13), k)


def small_instance(seed: int, max_app: int, max_jobs: int, tie_probs: tuple[float, ...],
                   max_k: int = 3) -> Instance:
    rng = random.Random(seed)
    n_app = rng.randint(1, max_app)
    n_jobs = rng.randint(1, max_jobs)
    if rng.random() < 0.6:
        # contended: at most as many jobs as applicants
        n_app = rng.randint(2, max_app)
        n_jobs = rng.randint(1, min(n_app, max_jobs))
    k = rng.randint(1, max_k)
    tie = rng.choice(tie_probs)
    weights = random_weights(rng, k)
    if rng.random() < 0.7:
        return correlated(rng, n_app, n_jobs, max_jobs, tie, weights)
    return generate(GenParams(n_app, n_jobs, max_jobs, tie, k, rng.randrange(2**31),
                              tuple(sorted(weights)), min_list_len=0))


def strict_instance(seed: int) -> Instance:
    return small_instance(seed, 6, 6, (0.0,))


def ties_instance(seed: int) -> Instance:
    return small_instance(seed, 5, 5, (0.3, 0.7))
