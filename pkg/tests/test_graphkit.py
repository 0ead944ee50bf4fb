from hypothesis import given, settings
from hypothesis import strategies as st

from brute import best_signature, critical_by_deletion, max_matching_size
from popmatch.graphkit import (
    BipartiteGraph,
    alternating_exchange_path,
    critical_vertices,
    matching_size,
    max_matching,
    rank_maximal,
    rank_signature,
    right_mates,
)

A, B, C, D, E = range(5)
# first/second-job graph of the four-applicant example
EX4_FS = BipartiteGraph(4, 5, [[A, B], [C, D], [D, E], [D, E]])
# its full preference graph
EX4_H = BipartiteGraph(4, 5, [[A, B, C], [A, C, D], [C, A, D, E], [A, D, E]])
M1 = [A, C, D, E]


@st.composite
def graphs(draw, max_left=8, max_right=8, max_rank=None):
    n_left = draw(st.integers(0, max_left))
    n_right = draw(st.integers(1, max_right))
    adj, ranks = [], []
    for _ in range(n_left):
        nbrs = draw(st.lists(st.integers(0, n_right - 1), unique=True, max_size=n_right))
        adj.append(nbrs)
        if max_rank:
            ranks.append([draw(st.integers(1, max_rank)) for _ in nbrs])
    return BipartiteGraph(n_left, n_right, adj, ranks if max_rank else None)


def assert_valid(graph, mate):
    used = [v for v in mate if v != -1]
    assert len(used) == len(set(used))
    for u, v in enumerate(mate):
        assert v == -1 or v in graph.adj[u]


def test_single_edge():
    g = BipartiteGraph(1, 1, [[0]])
    assert max_matching(g) == [0]


def test_ex4_fs_graph_is_applicant_complete():
    mate = max_matching(EX4_FS)
    assert_valid(EX4_FS, mate)
    assert matching_size(mate) == 4 == max_matching_size(4, EX4_FS.adj)


def test_complete_3x3():
    g = BipartiteGraph(3, 3, [[0, 1, 2]] * 3)
    assert matching_size(max_matching(g)) == 3


@settings(max_examples=300)
@given(graphs())
def test_max_matching_matches_brute_force(g):
    mate = max_matching(g)
    assert_valid(g, mate)
    assert matching_size(mate) == max_matching_size(g.n_left, g.adj)


@settings(max_examples=200)
@given(graphs(), st.randoms(use_true_random=False))
def test_seeded_max_matching_keeps_at_least_seed(g, rnd):
    seed = [-1] * g.n_left
    taken = set()
    for u in range(g.n_left):
        free = [v for v in g.adj[u] if v not in taken]
        if free and rnd.random() < 0.5:
            seed[u] = rnd.choice(free)
            taken.add(seed[u])
    mate = max_matching(g, seed)
    assert_valid(g, mate)
    assert matching_size(mate) >= matching_size(seed)
    assert matching_size(mate) == max_matching_size(g.n_left, g.adj)


def test_critical_single_edge():
    g = BipartiteGraph(1, 1, [[0]])
    cs = critical_vertices(g, max_matching(g))
    assert cs.applicants == (True,) and cs.jobs == (True,)


def test_critical_two_alternatives():
    g = BipartiteGraph(1, 2, [[0, 1]])
    cs = critical_vertices(g, [0])
    assert cs.applicants == (True,)
    assert cs.jobs == (False, False)


def test_critical_ex4_first_layer():
    # G_1 holds only x1 -- A
    g = BipartiteGraph(4, 5, [[A], [], [], []])
    cs = critical_vertices(g, max_matching(g))
    assert cs.critical_jobs() == {A}
    left, right = critical_by_deletion(4, 5, g.adj)
    assert list(cs.jobs) == right and list(cs.applicants) == left


@settings(max_examples=300)
@given(graphs())
def test_critical_matches_deletion_oracle(g):
    cs = critical_vertices(g, max_matching(g))
    left, right = critical_by_deletion(g.n_left, g.n_right, g.adj)
    assert list(cs.applicants) == left
    assert list(cs.jobs) == right


def test_rank_maximal_small():
    g = BipartiteGraph(2, 2, [[0, 1], [0]], [[1, 2], [1]])
    mate = rank_maximal(g, 2)
    assert mate == [1, 0]
    assert rank_signature(g, mate, 2) == (1, 1)


def test_rank_maximal_single_rank_is_maximum():
    g = BipartiteGraph(3, 3, [[0, 1], [0], [1, 2]], [[1, 1], [1], [1, 1]])
    assert matching_size(rank_maximal(g, 1)) == 3


def test_rank_maximal_empty():
    g = BipartiteGraph(0, 1, [], [])
    assert rank_maximal(g, 3) == []


@settings(max_examples=300)
@given(graphs(max_left=7, max_right=7, max_rank=4))
def test_rank_maximal_matches_brute_force(g):
    mate = rank_maximal(g, 4)
    assert_valid(g, mate)
    assert rank_signature(g, mate, 4) == best_signature(g.n_left, g.adj, g.ranks, 4)


def test_exchange_path_on_path_graph():
    g = BipartiteGraph(1, 2, [[0, 1]])
    assert alternating_exchange_path(g, [0], 0) == [0, 0, 1]


def test_exchange_path_none():
    g = BipartiteGraph(1, 1, [[0]])
    assert alternating_exchange_path(g, [0], 0) is None


def test_exchange_path_ex4():
    # only the full preference graph links D back to the free job B
    assert alternating_exchange_path(EX4_FS, M1, D) is None
    path = alternating_exchange_path(EX4_H, M1, D)
    assert path == [D, 2, A, 0, B]


@settings(max_examples=200)
@given(graphs(), st.data())
def test_exchange_path_is_valid(g, data):
    mate = max_matching(g)
    matched = [v for v in mate if v != -1]
    if not matched:
        return
    start = data.draw(st.sampled_from(matched))
    path = alternating_exchange_path(g, mate, start)
    mate_r = right_mates(g.n_right, mate)
    # oracle: an exchange path exists iff start is non-critical
    critical = critical_by_deletion(g.n_left, g.n_right, g.adj)[1][start]
    assert (path is None) == critical
    if path is not None:
        assert path[0] == start and mate_r[path[-1]] == -1
        for i in range(1, len(path) - 1, 2):
            x = path[i]
            assert mate[x] == path[i - 1] and path[i + 1] in g.adj[x]
