"""Weighted popular matchings when preference lists contain ties.

Category ``i`` (0-based here) owns the graph ``G_i``: edges from applicants
of categories ``0..i`` to their first-job sets.  First jobs of category ``i``
avoid every job that was critical in an earlier layer; second jobs avoid
everything critical up to the applicant's own layer.  Pruning attaches a
label to each job at the first layer where it becomes critical, and the
final well-formed matching is read off a rank-maximal matching of the
pruned graph.

Memory is O(k * (n + |J|)) because every layer's maximum matching and
critical-applicant mask are kept for pruning and for the acceptance check.
"""

from __future__ import annotations

import heapq
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
from popmatch.graphkit import (
    EVEN,
    BipartiteGraph,
    gallai_edmonds,
    matching_size,
    max_matching,
    rank_maximal,
    right_mates,
)

INF = math.inf


@dataclass(frozen=True)
class LayeredState:
    """Incremental layers ``G_1..G_k`` with their first/second-job sets.

    ``s_sets[x]`` is empty when ``x`` is critical in its own layer.
    ``first_critical[p]`` is the first layer in which job ``p`` is critical,
    ``-1`` if it never is; ``newly_critical[i]`` lists those jobs per layer.
    """

    partition: CategoryPartition
    f_sets: tuple[tuple[int, ...], ...]
    f_rank: tuple[int, ...]
    s_sets: tuple[tuple[int, ...], ...]
    s_rank: tuple[int, ...]
    matchings: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    critical_applicants: tuple[bytes, ...]
    critical_jobs: tuple[bytes, ...]
    first_critical: tuple[int, ...]
    newly_critical: tuple[tuple[int, ...], ...]

    def layer_graph(self, i: int, n_jobs: int) -> BipartiteGraph:
        cat = self.partition.category_of
        adj = [list(fx) if cat[x] <= i else [] for x, fx in enumerate(self.f_sets)]
        return BipartiteGraph(len(adj), n_jobs, adj)


@dataclass(frozen=True)
class TiesLabels:
    """Job labels plus the applicants whose first/second-job edges were pruned."""

    labels: dict[int, float]
    f_pruned: frozenset[int]
    s_pruned: frozenset[int]

    def pruned_edges(self, layers: LayeredState) -> set[tuple[int, int]]:
        return ({(x, p) for x in self.f_pruned for p in layers.f_sets[x]}
                | {(x, p) for x in self.s_pruned for p in layers.s_sets[x]})


def build_layers(instance: Instance, partition: CategoryPartition) -> LayeredState:
    if not instance.augmented:
        raise InstanceError("ties pipeline needs an augmented instance")
    n, n_jobs = instance.n_applicants, len(instance.jobs)
    prefs = instance.prefs
    crit_before = bytearray(n_jobs)
    first_critical = [-1] * n_jobs
    adj: list[list[int]] = [[] for _ in range(n)]
    radj: list[list[int]] = [[] for _ in range(n_jobs)]
    graph = BipartiteGraph(n, n_jobs, adj)
    f_sets: list[tuple[int, ...]] = [()] * n
    s_sets: list[tuple[int, ...]] = [()] * n
    f_rank = [-1] * n
    s_rank = [-1] * n
    mate = [-1] * n
    matchings, sizes, crit_apps, crit_jobs, newly = [], [], [], [], []

    for i, members in enumerate(partition.categories):
        for x in members:
            for r, group in enumerate(prefs[x]):
                avail = tuple(p for p in group if not crit_before[p])
                if avail:
                    f_sets[x], f_rank[x] = avail, r
                    break
            adj[x] = list(f_sets[x])
            for p in f_sets[x]:
                radj[p].append(x)
        mate = max_matching(graph, mate)
        lab_l, lab_r = gallai_edmonds(graph, mate, radj)
        crit_l = bytes(lab != EVEN for lab in lab_l)
        crit_r = bytes(lab != EVEN for lab in lab_r)
        fresh = []
        for p in range(n_jobs):
            if crit_r[p] and not crit_before[p]:
                first_critical[p] = i
                crit_before[p] = 1
                fresh.append(p)
        for x in members:
            if crit_l[x]:
                continue
            for r, group in enumerate(prefs[x]):
                avail = tuple(p for p in group if not crit_before[p])
                if avail:
                    s_sets[x], s_rank[x] = avail, r
                    break
        matchings.append(tuple(mate))
        sizes.append(matching_size(mate))
        crit_apps.append(crit_l)
        crit_jobs.append(crit_r)
        newly.append(tuple(fresh))

    return LayeredState(partition, tuple(f_sets), tuple(f_rank), tuple(s_sets), tuple(s_rank),
                        tuple(matchings), tuple(sizes), tuple(crit_apps), tuple(crit_jobs),
                        tuple(first_critical), tuple(newly))


def _min_label(jobs, labels: list[float]) -> float:
    best = INF
    for p in jobs:
        if labels[p] < best:
            best = labels[p]
    return best


def _lambda_min_f(instance: Instance, layers: LayeredState, x: int, labels: list[float]) -> float:
    return _min_label((p for g in instance.prefs[x][:layers.f_rank[x]] for p in g), labels)


def _lambda_equiv(instance: Instance, layers: LayeredState, x: int, labels: list[float]) -> float:
    fx = layers.f_sets[x]
    return _min_label((p for p in instance.prefs[x][layers.f_rank[x]] if p not in fx), labels)


def lambda_equiv(instance: Instance, layers: LayeredState, x: int,
                 labels: dict[int, float]) -> float:
    """Minimum label over jobs tied with ``f(x)`` but outside it; ``inf`` if none."""
    fx = layers.f_sets[x]
    return min((labels.get(p, INF) for p in instance.prefs[x][layers.f_rank[x]] if p not in fx),
               default=INF)


def prune_ties(instance: Instance, partition: CategoryPartition,
               layers: LayeredState) -> TiesLabels | NoPopularMatching:
    n, n_jobs = instance.n_applicants, len(instance.jobs)
    weights, cat = partition.weights, partition.category_of
    labels = [INF] * n_jobs
    lmin_f = [INF] * n
    lequiv = [INF] * n
    f_pruned: set[int] = set()
    radj: list[list[int]] = [[] for _ in range(n_jobs)]
    seen: list[int] = []
    # applicants of the layers so far, sorted by min(lambda_min - w, lambda_equiv)
    order: list[tuple[float, int]] = []

    for i, members in enumerate(partition.categories):
        wi = weights[i]
        for x in members:
            lmin_f[x] = _lambda_min_f(instance, layers, x, labels)
            lequiv[x] = _lambda_equiv(instance, layers, x, labels)
            for p in layers.f_sets[x]:
                radj[p].append(x)
        seen.extend(members)
        order = list(heapq.merge(
            order, sorted((min(lmin_f[x] - instance.weights[x], lequiv[x]), x) for x in members)))

        if i == 0:
            for p in layers.newly_critical[0]:
                labels[p] = wi
            continue

        for x in members:
            if lmin_f[x] < wi:
                return NoPopularMatching(
                    f"applicant {instance.applicants[x]!r} can displace heavier applicants "
                    f"at cost {lmin_f[x]} < {wi}")

        crit = layers.critical_applicants[i]
        for x in seen:
            if not crit[x] and (lmin_f[x] < weights[cat[x]] + wi or lequiv[x] < wi):
                f_pruned.add(x)

        # Reverse alternating search from each critical applicant, cheapest key
        # first; a job's label comes from the first applicant that reaches it.
        mate = layers.matchings[i]
        mate_r = right_mates(n_jobs, mate)
        first_critical = layers.first_critical
        marked = bytearray(n_jobs)
        for key, x in order:
            if not crit[x]:
                continue
            q = mate[x]
            if marked[q]:
                continue
            value = min(wi, key)
            marked[q] = 1
            stack = [q]
            while stack:
                q = stack.pop()
                if first_critical[q] == i:
                    labels[q] = value
                holder = mate_r[q]
                for y in radj[q]:
                    if y != holder:
                        q2 = mate[y]
                        if q2 != -1 and not marked[q2]:
                            marked[q2] = 1
                            stack.append(q2)
        for p in layers.newly_critical[i]:
            if not marked[p]:
                labels[p] = wi

    s_pruned = set()
    for x in range(n):
        if layers.s_sets[x]:
            above = (p for g in instance.prefs[x][:layers.s_rank[x]] for p in g)
            if _min_label(above, labels) < instance.weights[x]:
                s_pruned.add(x)
    return TiesLabels({p: labels[p] for p in range(n_jobs) if layers.first_critical[p] >= 0},
                      frozenset(f_pruned), frozenset(s_pruned))


def _layer_counts_ok(instance: Instance, layers: LayeredState, jobs: list[int]) -> bool:
    cat = layers.partition.category_of
    per_layer = [0] * layers.partition.k
    for x, p in enumerate(jobs):
        if p in layers.f_sets[x]:
            per_layer[cat[x]] += 1
    total = 0
    for i, c in enumerate(per_layer):
        total += c
        if total != layers.sizes[i]:
            return False
    return True


def find_well_formed_ties(instance: Instance, layers: LayeredState, labels: TiesLabels,
                          max_cardinality: bool = False) -> list[int] | NoPopularMatching:
    """Well-formed matching in the pruned graph via a rank-maximal matching.

    First-job edges of category ``i`` get rank ``i + 1`` and second-job
    edges rank ``k + 1``.  With ``max_cardinality`` an applicant whose
    second job is its last resort gets that edge at rank ``k + 2``.
    """
    n, k = instance.n_applicants, layers.partition.k
    cat = layers.partition.category_of
    adj: list[list[int]] = [[] for _ in range(n)]
    ranks: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        if x not in labels.f_pruned:
            adj[x].extend(layers.f_sets[x])
            ranks[x].extend([cat[x] + 1] * len(layers.f_sets[x]))
        sx = layers.s_sets[x]
        if sx and x not in labels.s_pruned:
            r = k + 2 if max_cardinality and sx == (instance.last_resort(x),) else k + 1
            adj[x].extend(sx)
            ranks[x].extend([r] * len(sx))
    graph = BipartiteGraph(n, len(instance.jobs), adj, ranks)
    mate = rank_maximal(graph, k + 2 if max_cardinality else k + 1)
    missing = [x for x in range(n) if mate[x] == -1]
    if missing:
        return NoPopularMatching(
            f"applicant {instance.applicants[missing[0]]!r} gets neither a first nor a second job")
    if not _layer_counts_ok(instance, layers, mate):
        return NoPopularMatching("no matching of the pruned graph is maximum in every layer")
    return mate


def is_well_formed_ties(matching: Matching, instance: Instance, layers: LayeredState) -> bool:
    """Everyone within f(x) or s(x), and maximum in every layer graph."""
    jobs = [matching.job_or_last_resort(instance, x) for x in range(instance.n_applicants)]
    for x, p in enumerate(jobs):
        if p not in layers.f_sets[x] and p not in layers.s_sets[x]:
            return False
    return _layer_counts_ok(instance, layers, jobs)


@dataclass(frozen=True)
class TiesRun:
    """Everything a ties solve computed, for inspection and tests."""

    instance: Instance
    partition: CategoryPartition
    layers: LayeredState
    labels: TiesLabels | None
    result: Matching | NoPopularMatching


def run_ties(instance: Instance, max_cardinality: bool = False) -> TiesRun:
    inst = augment_with_last_resorts(instance)
    partition = categorize(inst)
    layers = build_layers(inst, partition)
    labels = prune_ties(inst, partition, layers)
    if isinstance(labels, NoPopularMatching):
        return TiesRun(inst, partition, layers, None, labels)
    mate = find_well_formed_ties(inst, layers, labels, max_cardinality)
    if isinstance(mate, NoPopularMatching):
        return TiesRun(inst, partition, layers, labels, mate)
    return TiesRun(inst, partition, layers, labels, Matching.from_jobs(inst, mate))


def solve_ties(instance: Instance) -> Matching | NoPopularMatching:
    """A popular matching (ties allowed), or the negative verdict."""
    return run_ties(instance).result


def solve_ties_max_cardinality(instance: Instance) -> Matching | NoPopularMatching:
    """A popular matching with the fewest last-resort assignments."""
    return run_ties(instance, max_cardinality=True).result
