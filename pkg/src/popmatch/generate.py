"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from popmatch.core import Instance


@dataclass(frozen=True)
class GenParams:
    applicants: int
    jobs: int
    list_len: int
    tie_prob: float = 0.0
    categories: int = 1
    seed: int = 0
    weights: tuple[int, ...] | None = None
    min_list_len: int | None = None

    def category_weights(self) -> tuple[int, ...]:
        if self.weights is not None:
            if len(self.weights) != self.categories or len(set(self.weights)) != self.categories:
                raise ValueError("need exactly `categories` distinct weights")
            return self.weights
        return tuple(2**i for i in range(self.categories))


def generate(params: GenParams) -> Instance:
    """Random instance; identical output for identical parameters.

    Each applicant draws a uniform weight category and a list of distinct
    jobs (length ``list_len``, or uniform in ``[min_list_len, list_len]``).
    Every boundary between consecutive jobs is merged into a tie with
    probability ``tie_prob``.
    """
    if params.applicants < 0 or params.jobs < 0 or params.list_len < 0:
        raise ValueError("sizes must be non-negative")
    if params.categories < 1:
        raise ValueError("need at least one category")
    rng = random.Random(params.seed)
    weights = params.category_weights()
    jobs = [f"j{i + 1}" for i in range(params.jobs)]
    apps = [f"a{i + 1}" for i in range(params.applicants)]
    hi = min(params.list_len, params.jobs)
    lo = hi if params.min_list_len is None else min(params.min_list_len, hi)
    prefs: list[tuple[tuple[int, ...], ...]] = []
    ws = []
    for _ in apps:
        ws.append(weights[rng.randrange(len(weights))])
        chosen = rng.sample(range(params.jobs), rng.randint(lo, hi))
        groups: list[list[int]] = []
        for p in chosen:
            if groups and rng.random() < params.tie_prob:
                groups[-1].append(p)
            else:
                groups.append([p])
        prefs.append(tuple(tuple(g) for g in groups))
    return Instance(tuple(apps), tuple(ws), tuple(jobs), tuple(prefs))


def planted(applicants: int, list_len: int, categories: int = 3, seed: int = 0,
            tie_prob: float = 0.0, pool_fraction: float = 0.02) -> Instance:
    """Large instances that admit a popular matching with high probability.

    Every list holds ``list_len - 1`` jobs from a shared pool of about
    ``pool_fraction * applicants`` jobs, followed by a job private to the
    applicant.  The pool jobs all become first jobs, so second jobs are the
    private ones and a well-formed matching always exists.  Weights are
    ``2**i`` as in :func:`generate`.
    """
    rng = random.Random(seed)
    pool = max(list_len, int(applicants * pool_fraction))
    weights = [2**i for i in range(categories)]
    jobs = [f"j{i + 1}" for i in range(pool + applicants)]
    prefs = []
    ws = []
    for x in range(applicants):
        ws.append(weights[rng.randrange(categories)])
        groups: list[list[int]] = []
        for p in rng.sample(range(pool), min(list_len - 1, pool)):
            if groups and rng.random() < tie_prob:
                groups[-1].append(p)
            else:
                groups.append([p])
        groups.append([pool + x])
        prefs.append(tuple(tuple(g) for g in groups))
    return Instance(tuple(f"a{i + 1}" for i in range(applicants)), tuple(ws), tuple(jobs),
                    tuple(prefs))
