"""Weighted popular matchings for strict preference lists in linear time.

Pipeline: first/second jobs per weight category, label-driven pruning of
edges that no popular matching can use, then a well-formed matching in the
pruned first/second-job graph.  All functions expect an augmented instance
(see :func:`popmatch.core.augment_with_last_resorts`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from popmatch.core import (
    CategoryPartition,
    Instance,
    InstanceError,
    Matching,
    NoPopularMatching,
    augment_with_last_resorts,
    categorize,
)

INF = math.inf


@dataclass(frozen=True)
class FSAssignment:
    """First and second jobs of a strict instance.

    ``f_level[p]`` is the category index of job ``p`` if it is some
    applicant's first job, else ``-1``.  ``s_job[x]`` is ``-1`` when
    ``f(x)`` is the last resort.  ``f_pos`` and ``s_pos`` are list positions.
    """

    f_job: tuple[int, ...]
    s_job: tuple[int, ...]
    f_pos: tuple[int, ...]
    s_pos: tuple[int, ...]
    f_level: tuple[int, ...]
    lists: tuple[tuple[int, ...], ...]

    def contenders(self) -> dict[int, list[int]]:
        """f-job -> applicants whose first job it is, in index order."""
        out: dict[int, list[int]] = {}
        for x, p in enumerate(self.f_job):
            out.setdefault(p, []).append(x)
        return out


@dataclass(frozen=True)
class ReducedGraph:
    """Surviving first/second-job edges after pruning, plus job labels."""

    fs: FSAssignment
    labels: dict[int, float]
    f_pruned: frozenset[int]
    s_pruned: frozenset[int]

    def pruned_edges(self) -> set[tuple[int, int]]:
        return ({(x, self.fs.f_job[x]) for x in self.f_pruned}
                | {(x, self.fs.s_job[x]) for x in self.s_pruned})

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for x, p in enumerate(self.fs.f_job):
            if x not in self.f_pruned:
                out.append((x, p))
            q = self.fs.s_job[x]
            if q != -1 and x not in self.s_pruned:
                out.append((x, q))
        return out


def _strict_lists(instance: Instance) -> tuple[tuple[int, ...], ...]:
    if not instance.augmented:
        raise InstanceError("strict pipeline needs an augmented instance")
    if not instance.is_strict:
        raise InstanceError("instance has ties; use the ties pipeline")
    return tuple(tuple(g[0] for g in groups) for groups in instance.prefs)


def compute_fs_strict(instance: Instance, partition: CategoryPartition) -> FSAssignment:
    lists = _strict_lists(instance)
    n = instance.n_applicants
    f_level = [-1] * len(instance.jobs)
    f_job = [-1] * n
    s_job = [-1] * n
    f_pos = [-1] * n
    s_pos = [-1] * n
    for i, members in enumerate(partition.categories):
        for x in members:
            lst = lists[x]
            pos = 0
            # first job not claimed by a heavier category; last resorts are never claimed
            while 0 <= f_level[lst[pos]] < i:
                pos += 1
            f_pos[x] = pos
            f_job[x] = lst[pos]
            f_level[lst[pos]] = i
        for x in members:
            if f_pos[x] == len(lists[x]) - 1:
                continue
            lst = lists[x]
            pos = f_pos[x] + 1
            while 0 <= f_level[lst[pos]] <= i:
                pos += 1
            s_pos[x] = pos
            s_job[x] = lst[pos]
    return FSAssignment(tuple(f_job), tuple(s_job), tuple(f_pos), tuple(s_pos),
                        tuple(f_level), lists)


def lambda_min(x: int, job_bound: int, fs: FSAssignment, labels: dict[int, float]) -> float:
    """Minimum label over the jobs ``x`` strictly prefers to ``job_bound``; ``inf`` if none."""
    return _lambda_above(x, fs.lists[x].index(job_bound), fs, labels)


def _lambda_above(x: int, bound_pos: int, fs: FSAssignment, labels: dict[int, float]) -> float:
    best = INF
    for p in fs.lists[x][:bound_pos]:
        lab = labels[p]
        if lab < best:
            best = lab
    return best


def prune_strict(instance: Instance, partition: CategoryPartition,
                 fs: FSAssignment) -> ReducedGraph | NoPopularMatching:
    weights = partition.weights
    labels: dict[int, float] = {}
    f_pruned: set[int] = set()
    contenders = fs.contenders()
    by_level: list[list[int]] = [[] for _ in weights]
    for p, xs in contenders.items():
        by_level[fs.f_level[p]].append(p)

    for p in by_level[0]:
        labels[p] = weights[0]
    # lambda_min(x, f(x)) per applicant
    above_f = [INF] * instance.n_applicants
    for i in range(1, partition.k):
        wi = weights[i]
        for x in partition.categories[i]:
            above_f[x] = lam = _lambda_above(x, fs.f_pos[x], fs, labels)
            if lam < wi:
                return NoPopularMatching(
                    f"applicant {instance.applicants[x]!r} can displace a heavier "
                    f"applicant at cost {lam} < {wi}")
        for p in by_level[i]:
            xs = contenders[p]
            if len(xs) == 1:
                labels[p] = min(wi, above_f[xs[0]] - wi)
            else:
                labels[p] = wi
                for x in xs:
                    if above_f[x] < 2 * wi:
                        f_pruned.add(x)

    # a sole contender always holds its first job, so its second job is moot
    s_pruned = set()
    for x, q in enumerate(fs.s_job):
        if (q != -1 and len(contenders[fs.f_job[x]]) > 1
                and _lambda_above(x, fs.s_pos[x], fs, labels) < instance.weights[x]):
            s_pruned.add(x)
    return ReducedGraph(fs, labels, frozenset(f_pruned), frozenset(s_pruned))


def find_well_formed_strict(reduced: ReducedGraph,
                            instance: Instance | None = None) -> list[int] | NoPopularMatching:
    """Well-formed matching inside the pruned graph, as a job-per-applicant list.

    Second-job edges into first jobs are dropped, degree-1 applicants are
    matched off, and the remaining degree-2 graph is solved component by
    component: it has an applicant-complete matching iff every component is
    an even cycle.  Free first jobs are finally filled by moving one of
    their contenders off its second job.  ``instance`` only serves to name
    applicants and jobs in the failure reason.
    """
    fs = reduced.fs

    def app(x: int) -> str:
        return repr(instance.applicants[x]) if instance else f"index {x}"

    def job(p: int) -> str:
        return repr(instance.jobs[p]) if instance else f"index {p}"

    n = len(fs.f_job)
    n_jobs = len(fs.f_level)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        if x not in reduced.f_pruned:
            nbrs[x].append(fs.f_job[x])
        q = fs.s_job[x]
        if q != -1 and x not in reduced.s_pruned and fs.f_level[q] == -1:
            nbrs[x].append(q)

    job_apps: list[list[int]] = [[] for _ in range(n_jobs)]
    for x in range(n):
        for p in nbrs[x]:
            job_apps[p].append(x)

    mate = [-1] * n
    job_taken = bytearray(n_jobs)
    deg = [len(nb) for nb in nbrs]

    def take(x: int, p: int) -> None:
        mate[x] = p
        job_taken[p] = 1
        for y in job_apps[p]:
            if mate[y] == -1 and y != x:
                deg[y] -= 1
                if deg[y] <= 1:
                    queue.append(y)

    queue = [x for x in range(n) if deg[x] <= 1]
    while queue:
        x = queue.pop()
        if mate[x] != -1:
            continue
        avail = [p for p in nbrs[x] if not job_taken[p]]
        if not avail:
            return NoPopularMatching(f"applicant {app(x)} has no admissible job")
        if len(avail) == 1:
            take(x, avail[0])

    # residual: every unmatched applicant has exactly two available jobs
    job_deg = [0] * n_jobs
    for x in range(n):
        if mate[x] == -1:
            for p in nbrs[x]:
                job_deg[p] += 1
    stack = [p for p in range(n_jobs) if job_deg[p] == 1]
    while stack:
        p = stack.pop()
        if job_deg[p] != 1:
            continue
        x = next(y for y in job_apps[p] if mate[y] == -1)
        mate[x] = p
        job_taken[p] = 1
        job_deg[p] = 0
        for q in nbrs[x]:
            if q != p:
                job_deg[q] -= 1
                if job_deg[q] == 1:
                    stack.append(q)

    for x0 in range(n):
        if mate[x0] != -1:
            continue
        # walk the component: applicants and jobs must alternate around a cycle
        x, p = x0, nbrs[x0][0]
        while True:
            if job_deg[p] != 2:
                return NoPopularMatching("residual graph has no applicant-complete matching")
            mate[x] = p
            job_taken[p] = 1
            y = next(y for y in job_apps[p] if y != x and (mate[y] == -1 or y == x0))
            if y == x0:
                break
            q = nbrs[y][0] if nbrs[y][1] == p else nbrs[y][1]
            x, p = y, q

    # repair: fill every first job that is still free
    for p, xs in fs.contenders().items():
        if job_taken[p]:
            continue
        for x in xs:
            if x not in reduced.f_pruned:
                job_taken[mate[x]] = 0
                mate[x] = p
                job_taken[p] = 1
                break
        else:
            return NoPopularMatching(
                f"first job {job(p)} cannot be given to any of its contenders")
    return mate


def is_well_formed_strict(matching: Matching, instance: Instance, fs: FSAssignment) -> bool:
    """Every first job held by one of its contenders; everyone on f(x) or s(x)."""
    held: dict[int, int] = {}
    for x in range(instance.n_applicants):
        p = matching.job_or_last_resort(instance, x)
        if p != fs.f_job[x] and p != fs.s_job[x]:
            return False
        held[p] = x
    return all(p in held and fs.f_job[held[p]] == p for p in set(fs.f_job))


@dataclass(frozen=True)
class StrictRun:
    """Everything a strict solve computed, for inspection and tests."""

    instance: Instance
    partition: CategoryPartition
    fs: FSAssignment
    reduced: ReducedGraph | None
    result: Matching | NoPopularMatching


def run_strict(instance: Instance) -> StrictRun:
    inst = augment_with_last_resorts(instance)
    partition = categorize(inst)
    fs = compute_fs_strict(inst, partition)
    reduced = prune_strict(inst, partition, fs)
    if isinstance(reduced, NoPopularMatching):
        return StrictRun(inst, partition, fs, None, reduced)
    mate = find_well_formed_strict(reduced, inst)
    if isinstance(mate, NoPopularMatching):
        return StrictRun(inst, partition, fs, reduced, mate)
    return StrictRun(inst, partition, fs, reduced, Matching.from_jobs(inst, mate))


def solve_strict(instance: Instance) -> Matching | NoPopularMatching:
    """A popular matching of a strict instance, or the negative verdict."""
    return run_strict(instance).result
