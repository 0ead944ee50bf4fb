from popmatch.core import categorize
from popmatch.generate import GenParams, generate, planted
from popmatch.strict import solve_strict


def test_deterministic():
    p = GenParams(20, 15, 5, 0.3, 3, seed=11)
    assert generate(p) == generate(p)
    assert generate(p) != generate(GenParams(20, 15, 5, 0.3, 3, seed=12))


def test_zero_tie_prob_is_strict():
    assert generate(GenParams(50, 30, 6, 0.0, 2, seed=1)).is_strict


def test_default_weights_are_powers_of_two():
    inst = generate(GenParams(200, 10, 3, categories=3, seed=5))
    ws = categorize(inst).weights
    assert ws == (4, 2, 1)
    assert all(a >= 2 * b for a, b in zip(ws, ws[1:]))


def test_lists_have_no_repeats():
    inst = generate(GenParams(100, 8, 8, 0.5, 2, seed=3, min_list_len=2))
    for groups in inst.prefs:
        flat = [p for g in groups for p in g]
        assert len(flat) == len(set(flat)) and 2 <= len(flat) <= 8


def test_planted_is_solvable():
    assert solve_strict(planted(2000, 5, 3, seed=4)).__class__.__name__ == "Matching"
