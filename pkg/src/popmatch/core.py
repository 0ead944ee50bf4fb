"""Instance model, weight categories and the weighted more-popular-than relation.

Applicants and jobs are opaque string ids at the boundary and dense integer
indices everywhere else.  A preference list is a sequence of tie groups; the
index of a group is the rank of every job inside it (0 is the top choice).

Last-resort jobs are internal.  An augmented instance appends, for applicant
``x``, the job with index ``n_real_jobs + x`` as a final singleton group.  A
:class:`Matching` never stores last-resort jobs explicitly: ``None`` means
"unmatched", which is the same state as "holding the last resort".
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

JobSpec = Union[str, Sequence[str]]


class InstanceError(ValueError):
    """Raised for malformed instances or matchings."""


@dataclass(frozen=True)
class Instance:
    applicants: tuple[str, ...]
    weights: tuple[int, ...]
    jobs: tuple[str, ...]
    prefs: tuple[tuple[tuple[int, ...], ...], ...]
    augmented: bool = False

    def __post_init__(self) -> None:
        n = len(self.applicants)
        if len(self.weights) != n or len(self.prefs) != n:
            raise InstanceError("applicants, weights and prefs must align")
        if len(set(self.applicants)) != n:
            raise InstanceError("duplicate applicant id")
        if len(set(self.jobs)) != len(self.jobs):
            raise InstanceError("duplicate job id")
        n_jobs = len(self.jobs)
        n_real = n_jobs - n if self.augmented else n_jobs
        if n_real < 0:
            raise InstanceError("augmented instance is missing last-resort jobs")
        for x, (name, w, groups) in enumerate(zip(self.applicants, self.weights, self.prefs)):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise InstanceError(f"applicant {name!r}: weight must be a positive integer")
            seen: set[int] = set()
            for g, group in enumerate(groups):
                if not group:
                    raise InstanceError(f"applicant {name!r}: empty tie group")
                for p in group:
                    if not 0 <= p < n_jobs:
                        raise InstanceError(f"applicant {name!r}: unknown job index {p}")
                    if p in seen:
                        raise InstanceError(
                            f"applicant {name!r}: job {self.jobs[p]!r} listed twice")
                    seen.add(p)
                    if p >= n_real and not (
                            self.augmented and p == n_real + x and g == len(groups) - 1
                            and len(group) == 1):
                        raise InstanceError(
                            f"applicant {name!r}: misplaced last-resort job {self.jobs[p]!r}")
            if self.augmented and (not groups or groups[-1] != (n_real + x,)):
                raise InstanceError(f"applicant {name!r}: list must end with its last resort")

    @classmethod
    def build(
        cls,
        weights: Mapping[str, int],
        prefs: Mapping[str, Sequence[JobSpec]],
        jobs: Iterable[str] = (),
    ) -> Instance:
        """Build a raw instance from id-keyed mappings.

        Each preference entry is a job id (singleton group) or a sequence of
        job ids (tie group).  Jobs are indexed in order of first appearance,
        after any ids passed explicitly in ``jobs``.
        """
        job_index: dict[str, int] = {}
        for j in jobs:
            job_index.setdefault(j, len(job_index))
        applicants = tuple(weights)
        unknown = set(prefs) - set(weights)
        if unknown:
            raise InstanceError(f"preferences for unknown applicants: {sorted(unknown)}")
        all_groups = []
        for a in applicants:
            groups = []
            for spec in prefs.get(a, ()):
                members = (spec,) if isinstance(spec, str) else tuple(spec)
                groups.append(tuple(job_index.setdefault(j, len(job_index)) for j in members))
            all_groups.append(tuple(groups))
        return cls(applicants, tuple(weights[a] for a in applicants), tuple(job_index),
                   tuple(all_groups))

    @property
    def n_applicants(self) -> int:
        return len(self.applicants)

    @property
    def n_real_jobs(self) -> int:
        return len(self.jobs) - len(self.applicants) if self.augmented else len(self.jobs)

    def last_resort(self, x: int) -> int:
        """Job index of ``l(x)``; only meaningful on augmented instances."""
        return self.n_real_jobs + x

    @property
    def is_strict(self) -> bool:
        return all(len(g) == 1 for groups in self.prefs for g in groups)

    @cached_property
    def ranks(self) -> tuple[dict[int, int], ...]:
        """Per applicant, real job index -> tie-group index."""
        n_real = self.n_real_jobs
        return tuple({p: r for r, g in enumerate(groups) for p in g if p < n_real}
                     for groups in self.prefs)

    def n_real_groups(self, x: int) -> int:
        groups = self.prefs[x]
        return len(groups) - 1 if self.augmented else len(groups)

    def rank(self, x: int, job: int | None) -> int:
        """Tie-group index of ``job`` for applicant ``x``; ``None`` is the last resort."""
        if job is None or (self.augmented and job == self.last_resort(x)):
            return self.n_real_groups(x)
        try:
            return self.ranks[x][job]
        except KeyError:
            raise InstanceError(
                f"job {job} is not on the list of applicant {self.applicants[x]!r}") from None

    def index_of_applicant(self, name: str) -> int:
        return self._applicant_index[name]

    def index_of_job(self, name: str) -> int:
        return self._job_index[name]

    @cached_property
    def _applicant_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.applicants)}

    @cached_property
    def _job_index(self) -> dict[str, int]:
        return {j: i for i, j in enumerate(self.jobs)}

    def check_matching(self, matching: Matching) -> None:
        if len(matching.assignment) != self.n_applicants:
            raise InstanceError("matching does not cover the applicant set")
        used: set[int] = set()
        for x, p in enumerate(matching.assignment):
            if p is None:
                continue
            if p not in self.ranks[x]:
                raise InstanceError(
                    f"applicant {self.applicants[x]!r} matched to unlisted job {p}")
            if p in used:
                raise InstanceError(f"job {self.jobs[p]!r} matched twice")
            used.add(p)


def _last_resort_name(applicant: str, taken: set[str]) -> str:
    name = f"l({applicant})"
    while name in taken:
        name += "'"
    return name


def augment_with_last_resorts(instance: Instance) -> Instance:
    """Append a private last-resort job to every applicant's list (idempotent)."""
    if instance.augmented:
        return instance
    taken = set(instance.jobs)
    extra = []
    for a in instance.applicants:
        name = _last_resort_name(a, taken)
        taken.add(name)
        extra.append(name)
    base = len(instance.jobs)
    prefs = tuple(groups + ((base + x,),) for x, groups in enumerate(instance.prefs))
    return Instance(instance.applicants, instance.weights, instance.jobs + tuple(extra),
                    prefs, augmented=True)


@dataclass(frozen=True)
class CategoryPartition:
    """Applicants grouped by distinct weight, heaviest category first."""

    categories: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    category_of: tuple[int, ...] = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.categories)


def categorize(instance: Instance) -> CategoryPartition:
    distinct = sorted(set(instance.weights), reverse=True)
    pos = {w: i for i, w in enumerate(distinct)}
    members: list[list[int]] = [[] for _ in distinct]
    category_of = []
    for x, w in enumerate(instance.weights):
        members[pos[w]].append(x)
        category_of.append(pos[w])
    return CategoryPartition(tuple(map(tuple, members)), tuple(distinct), tuple(category_of))


@dataclass(frozen=True)
class Matching:
    """Applicant-indexed assignment; ``None`` means the applicant's last resort."""

    assignment: tuple[int | None, ...]

    @classmethod
    def from_jobs(cls, instance: Instance, jobs: Sequence[int]) -> Matching:
        """Normalise a mate array over an augmented instance (``-1`` = free)."""
        n_real = instance.n_real_jobs
        return cls(tuple(p if 0 <= p < n_real else None for p in jobs))

    @classmethod
    def from_pairs(cls, instance: Instance, pairs: Mapping[str, str | None]) -> Matching:
        assignment: list[int | None] = [None] * instance.n_applicants
        for a, j in pairs.items():
            x = instance.index_of_applicant(a)
            if j is None:
                continue
            p = instance.index_of_job(j)
            assignment[x] = None if p >= instance.n_real_jobs else p
        m = cls(tuple(assignment))
        instance.check_matching(m)
        return m

    def pairs(self, instance: Instance) -> dict[str, str | None]:
        return {instance.applicants[x]: (None if p is None else instance.jobs[p])
                for x, p in enumerate(self.assignment)}

    def job_or_last_resort(self, instance: Instance, x: int) -> int:
        """Job index of ``x`` in the augmented index space."""
        p = self.assignment[x]
        return instance.n_real_jobs + x if p is None else p

    @property
    def last_resort_count(self) -> int:
        return sum(p is None for p in self.assignment)

    def __len__(self) -> int:
        return sum(p is not None for p in self.assignment)


class Preference(enum.Enum):
    PREFERS_A = "prefers_a"
    PREFERS_B = "prefers_b"
    INDIFFERENT = "indifferent"


class Comparison(enum.Enum):
    FIRST_MORE_POPULAR = "first"
    SECOND_MORE_POPULAR = "second"
    TIE = "tie"


def preference(instance: Instance, x: int, job_a: int | None, job_b: int | None) -> Preference:
    """Compare two jobs for applicant ``x`` by tie-group index."""
    ra, rb = instance.rank(x, job_a), instance.rank(x, job_b)
    if ra < rb:
        return Preference.PREFERS_A
    if rb < ra:
        return Preference.PREFERS_B
    return Preference.INDIFFERENT


def satisfaction(m1: Matching, m2: Matching, instance: Instance) -> int:
    """Weight preferring ``m1`` minus weight preferring ``m2``."""
    instance.check_matching(m1)
    instance.check_matching(m2)
    total = 0
    for x, (p, q) in enumerate(zip(m1.assignment, m2.assignment)):
        if p == q:
            continue
        r1, r2 = instance.rank(x, p), instance.rank(x, q)
        if r1 < r2:
            total += instance.weights[x]
        elif r2 < r1:
            total -= instance.weights[x]
    return total


def more_popular(m1: Matching, m2: Matching, instance: Instance) -> Comparison:
    s = satisfaction(m1, m2, instance)
    if s > 0:
        return Comparison.FIRST_MORE_POPULAR
    if s < 0:
        return Comparison.SECOND_MORE_POPULAR
    return Comparison.TIE


@dataclass(frozen=True)
class NoPopularMatching:
    """Negative verdict: the instance admits no popular matching."""

    reason: str
