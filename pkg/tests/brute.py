"""Exhaustive reference computations for small bipartite graphs.

Everything here is a DP over (left vertex, set of used right vertices), so it
explores every matching implicitly and shares no code with the library.
"""

from __future__ import annotations

from functools import lru_cache


def best_matching_value(n_left, adj, value, skip_left=None, skip_right=None, dim=1):
    """Maximum over matchings of the sum of ``value(u, i)`` for matched edges.

    ``value`` returns a tuple; tuples are added componentwise and compared
    lexicographically, which is translation invariant, so the DP is exact.
    """
    zero = (0,) * dim

    @lru_cache(maxsize=None)
    def go(u, used):
        if u == n_left:
            return zero
        best = go(u + 1, used)
        if u == skip_left:
            return best
        for i, v in enumerate(adj[u]):
            if v == skip_right or used >> v & 1:
                continue
            rest = go(u + 1, used | 1 << v)
            cand = tuple(a + b for a, b in zip(value(u, i), rest))
            if cand > best:
                best = cand
        return best

    return go(0, 0)


def max_matching_size(n_left, adj, skip_left=None, skip_right=None):
    return best_matching_value(n_left, adj, lambda u, i: (1,), skip_left, skip_right)[0]


def critical_by_deletion(n_left, n_right, adj):
    """v is critical iff deleting it shrinks the maximum matching."""
    full = max_matching_size(n_left, adj)
    left = [max_matching_size(n_left, adj, skip_left=u) < full for u in range(n_left)]
    right = [max_matching_size(n_left, adj, skip_right=v) < full for v in range(n_right)]
    return left, right


def best_signature(n_left, adj, ranks, max_rank):
    def value(u, i):
        sig = [0] * max_rank
        sig[ranks[u][i] - 1] = 1
        return tuple(sig)
    return best_matching_value(n_left, adj, value, dim=max_rank)
