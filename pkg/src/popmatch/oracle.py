"""Brute-force popularity checks for small instances.

Nothing in here is used by the solvers; it exists to certify their output.
Every matching of the instance is enumerated, so the cost is exponential and
guarded by ``limit``.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from popmatch.core import Instance, Matching
from popmatch.strict import FSAssignment, is_well_formed_strict

DEFAULT_LIMIT = 10**7


class OracleSizeError(ValueError):
    """The instance is too large for exhaustive enumeration."""


def _check_size(instance: Instance, limit: int) -> None:
    bound = (instance.n_real_jobs + 1) ** instance.n_applicants
    if bound > limit:
        raise OracleSizeError(
            f"(#jobs + 1)^#applicants = {bound} exceeds the enumeration limit {limit}")


def enumerate_matchings(instance: Instance, limit: int = DEFAULT_LIMIT) -> Iterator[Matching]:
    """Every assignment of applicants to distinct listed jobs or their last resort.

    Depth-first over applicants in index order; for each applicant the real
    jobs are tried in list order, then the last resort.
    """
    _check_size(instance, limit)
    n = instance.n_applicants
    n_real = instance.n_real_jobs
    options = [[p for g in groups for p in g if p < n_real] for groups in instance.prefs]
    current: list[int | None] = [None] * n

    def dfs(x: int, used: int) -> Iterator[Matching]:
        if x == n:
            yield Matching(tuple(current))
            return
        for p in options[x]:
            if not used >> p & 1:
                current[x] = p
                yield from dfs(x + 1, used | 1 << p)
        current[x] = None
        yield from dfs(x + 1, used)

    yield from dfs(0, 0)


def _rank_matrix(instance: Instance, matchings: list[Matching]) -> np.ndarray:
    n = instance.n_applicants
    rows = np.empty((len(matchings), n), dtype=np.int16)
    for i, m in enumerate(matchings):
        rows[i] = [instance.rank(x, p) for x, p in enumerate(m.assignment)]
    return rows


@dataclass(frozen=True)
class PopularityVerdict:
    """``popular`` is False iff ``witness`` beats the matching by ``margin`` > 0."""

    popular: bool
    witness: Matching | None
    margin: int


def is_popular(matching: Matching, instance: Instance,
               limit: int = DEFAULT_LIMIT) -> PopularityVerdict:
    instance.check_matching(matching)
    everything = list(enumerate_matchings(instance, limit))
    ranks = _rank_matrix(instance, everything)
    mine = _rank_matrix(instance, [matching])[0]
    w = np.asarray(instance.weights, dtype=np.int64)
    gains = np.sign(mine[None, :] - ranks).astype(np.int64) @ w
    best = int(np.argmax(gains))
    margin = int(gains[best])
    if margin > 0:
        return PopularityVerdict(False, everything[best], margin)
    return PopularityVerdict(True, None, margin)


def _unbeaten(candidates: np.ndarray, challengers: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Mask of candidate rank vectors no challenger beats."""
    keep = np.ones(len(candidates), dtype=bool)
    if len(challengers) == 0 or len(candidates) == 0:
        return keep
    n = candidates.shape[1]
    chunk = max(1, 4_000_000 // max(1, len(challengers) * max(n, 1)))
    for start in range(0, len(candidates), chunk):
        block = candidates[start:start + chunk]
        diff = np.sign(block[:, None, :] - challengers[None, :, :]).astype(np.int64)
        keep[start:start + chunk] = (diff @ w).max(axis=1) <= 0
    return keep


def all_popular(instance: Instance, limit: int = DEFAULT_LIMIT) -> list[Matching]:
    """Every popular matching, in enumeration order."""
    everything = list(enumerate_matchings(instance, limit))
    ranks = _rank_matrix(instance, everything)
    w = np.asarray(instance.weights, dtype=np.int64)
    uniq, inverse = np.unique(ranks, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    # cheap pass against the best few hundred vectors, then the full check
    order = np.argsort(uniq.astype(np.int64) @ w, kind="stable")
    alive = _unbeaten(uniq, uniq[order[:256]], w)
    idx = np.flatnonzero(alive)
    ok = np.zeros(len(uniq), dtype=bool)
    ok[idx] = _unbeaten(uniq[idx], uniq, w)
    return [m for m, u in zip(everything, inverse) if ok[u]]


def is_well_formed(matching: Matching, instance: Instance, structure) -> bool:
    """Well-formedness against strict first/second jobs or a ties layering."""
    if isinstance(structure, FSAssignment):
        return is_well_formed_strict(matching, instance, structure)
    from popmatch.ties import LayeredState, is_well_formed_ties
    if isinstance(structure, LayeredState):
        return is_well_formed_ties(matching, instance, structure)
    raise TypeError(f"unsupported structure {type(structure).__name__}")
