"""Timing harness over planted instances."""

from __future__ import annotations

import gc
import statistics
import time
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass

from popmatch.core import Instance
from popmatch.generate import planted
from popmatch.strict import solve_strict
from popmatch.ties import solve_ties

ENGINES: dict[str, Callable[[Instance], object]] = {"strict": solve_strict, "ties": solve_ties}


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    engine: str
    millis: float

    def csv(self) -> str:
        return f"{self.n},{self.m},{self.engine},{self.millis:.1f}"


def edge_count(instance: Instance) -> int:
    return sum(len(g) for groups in instance.prefs for g in groups)


def time_solve(solve: Callable[[Instance], object], instance: Instance, repeats: int = 1) -> float:
    """Median wall time in seconds."""
    times = []
    for _ in range(repeats):
        gc.collect()
        start = time.perf_counter()
        solve(instance)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def run_bench(sizes: Iterable[int], seed: int = 0, list_len: int = 5, categories: int = 3,
              tie_prob: float = 0.2, repeats: int = 1) -> Iterator[BenchRow]:
    """The strict engine on strict instances, then the ties engine with ties, per size."""
    for n in sizes:
        for engine, tp in (("strict", 0.0), ("ties", tie_prob)):
            inst = planted(n, list_len, categories, seed, tie_prob=tp)
            secs = time_solve(ENGINES[engine], inst, repeats)
            yield BenchRow(n, edge_count(inst), engine, secs * 1000)
