import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from example4 import EX4, M2, A, C, D, E, X1, X2, X3, X4
from instances import strict_instance
from popmatch.core import Instance, Matching, NoPopularMatching, augment_with_last_resorts, \
    categorize
from popmatch.oracle import all_popular, is_popular
from popmatch.strict import (
    compute_fs_strict,
    lambda_min,
    prune_strict,
    run_strict,
    solve_strict,
)

B = 1


def fs_of(inst):
    aug = augment_with_last_resorts(inst)
    return aug, categorize(aug), compute_fs_strict(aug, categorize(aug))


def test_first_and_second_jobs_example():
    _, _, fs = fs_of(EX4)
    assert fs.f_job == (A, C, D, D)
    assert fs.s_job == (B, D, E, E)


def test_single_applicant_lists():
    aug, _, fs = fs_of(Instance.build({"x": 1}, {"x": ["A"]}))
    assert fs.f_job == (0,) and fs.s_job == (aug.last_resort(0),)
    aug, _, fs = fs_of(Instance.build({"x": 1}, {"x": []}))
    assert fs.f_job == (aug.last_resort(0),) and fs.s_job == (-1,)


def test_lambda_min_example():
    aug, part, fs = fs_of(EX4)
    labels = {A: 7, C: 3}
    assert lambda_min(X3, D, fs, labels) == 3
    assert lambda_min(X1, A, fs, labels) == math.inf
    assert lambda_min(X4, D, fs, labels) == 7


def test_prune_example():
    aug, part, fs = fs_of(EX4)
    reduced = prune_strict(aug, part, fs)
    assert reduced.labels == {A: 7, C: 3, D: 2}
    assert reduced.pruned_edges() == {(X3, D)}


def test_prune_single_category_labels_everything_w1():
    inst = Instance.build({"a": 2, "b": 2, "c": 2}, {"a": ["A", "B"], "b": ["A"], "c": ["B"]})
    aug, part, fs = fs_of(inst)
    reduced = prune_strict(aug, part, fs)
    assert set(reduced.labels.values()) == {2}
    assert not reduced.f_pruned


def test_three_on_two_jobs_has_no_popular_matching():
    inst = Instance.build({"a": 1, "b": 1, "c": 1}, {x: ["A", "B"] for x in "abc"})
    run = run_strict(inst)
    assert run.reduced is not None and not run.reduced.pruned_edges()
    assert isinstance(run.result, NoPopularMatching)
    assert all_popular(inst) == []


def test_solve_example():
    assert solve_strict(EX4) == M2


def test_single_applicant_single_job():
    inst = Instance.build({"x": 1}, {"x": ["A"]})
    assert solve_strict(inst) == Matching((0,))


def test_two_on_one_job():
    inst = Instance.build({"a": 1, "b": 1}, {"a": ["A"], "b": ["A"]})
    result = solve_strict(inst)
    assert sorted(result.assignment, key=str) == [0, None]
    assert is_popular(result, inst).popular


def test_rejects_ties():
    with pytest.raises(ValueError):
        solve_strict(Instance.build({"x": 1}, {"x": [("A", "B")]}))


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 10**6))
def test_first_jobs_disjoint_across_categories(seed):
    aug, part, fs = fs_of(strict_instance(seed))
    level = {}
    for x, p in enumerate(fs.f_job):
        i = part.category_of[x]
        # f_i-jobs of different categories never coincide
        assert level.setdefault(p, i) == i
    for x, q in enumerate(fs.s_job):
        if q != -1:
            # an s_j-job is never an f_i-job for i <= j
            assert not (q in level and level[q] <= part.category_of[x])


def relabel(inst, rng):
    apps = list(range(inst.n_applicants))
    rng.shuffle(apps)
    names = {p: f"q{rng.random():.12f}" for p in range(len(inst.jobs))}
    return Instance(tuple(f"b{inst.applicants[x]}" for x in apps),
                    tuple(inst.weights[x] for x in apps),
                    tuple(names[p] for p in range(len(inst.jobs))),
                    tuple(inst.prefs[x] for x in apps)), apps


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_invariant_under_relabeling(seed):
    inst = strict_instance(seed)
    other, order = relabel(inst, random.Random(seed))
    r1, r2 = solve_strict(inst), solve_strict(other)
    assert isinstance(r1, NoPopularMatching) == isinstance(r2, NoPopularMatching)
    if not isinstance(r2, NoPopularMatching):
        assert is_popular(r2, other).popular
