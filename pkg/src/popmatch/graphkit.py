"""Bipartite matching primitives shared by both solvers.

Matchings here are mate arrays: ``mate[u]`` is the right vertex matched to
left vertex ``u`` or ``-1``.  Left vertices are applicants, right vertices
are jobs.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

EVEN, ODD, UNREACHABLE = 0, 1, 2


@dataclass
class BipartiteGraph:
    n_left: int
    n_right: int
    adj: list[list[int]]
    ranks: list[list[int]] | None = None

    @classmethod
    def from_edges(cls, n_left: int, n_right: int,
                   edges: Sequence[tuple[int, int]] | Sequence[tuple[int, int, int]]) -> BipartiteGraph:
        adj: list[list[int]] = [[] for _ in range(n_left)]
        ranks: list[list[int]] | None = None
        if edges and len(edges[0]) == 3:
            ranks = [[] for _ in range(n_left)]
        seen = set()
        for e in edges:
            u, v = e[0], e[1]
            if (u, v) in seen:
                raise ValueError(f"parallel edge {(u, v)}")
            seen.add((u, v))
            adj[u].append(v)
            if ranks is not None:
                ranks[u].append(e[2])
        return cls(n_left, n_right, adj, ranks)

    def right_adjacency(self) -> list[list[int]]:
        radj: list[list[int]] = [[] for _ in range(self.n_right)]
        for u, vs in enumerate(self.adj):
            for v in vs:
                radj[v].append(u)
        return radj

    @property
    def n_edges(self) -> int:
        return sum(map(len, self.adj))


def right_mates(n_right: int, mate: Sequence[int]) -> list[int]:
    mate_r = [-1] * n_right
    for u, v in enumerate(mate):
        if v != -1:
            mate_r[v] = u
    return mate_r


def matching_size(mate: Sequence[int]) -> int:
    return sum(v != -1 for v in mate)


def max_matching(graph: BipartiteGraph, seed: Sequence[int] | None = None) -> list[int]:
    """Hopcroft-Karp, optionally starting from a valid matching ``seed``.

    Each phase layers the graph by BFS from the free left vertices and then
    augments along a maximal set of vertex-disjoint shortest paths with an
    iterative DFS, so deep graphs do not hit the recursion limit.
    """
    n, adj = graph.n_left, graph.adj
    mate = list(seed) if seed is not None else [-1] * n
    mate_r = right_mates(graph.n_right, mate)
    if seed is None:
        for u in range(n):
            for v in adj[u]:
                if mate_r[v] == -1:
                    mate[u] = v
                    mate_r[v] = u
                    break

    inf = n + 1
    while True:
        dist = [inf] * n
        queue = [u for u in range(n) if mate[u] == -1 and adj[u]]
        for u in queue:
            dist[u] = 0
        limit = inf
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= limit:
                continue
            for v in adj[u]:
                w = mate_r[v]
                if w == -1:
                    if limit == inf:
                        limit = du + 1
                elif dist[w] == inf:
                    dist[w] = du + 1
                    queue.append(w)
        if limit == inf:
            return mate

        ptr = [0] * n
        for root in range(n):
            if mate[root] != -1 or dist[root] != 0:
                continue
            stack = [root]
            while stack:
                u = stack[-1]
                nbrs = adj[u]
                du = dist[u] + 1
                i = ptr[u]
                pushed = False
                while i < len(nbrs):
                    w = mate_r[nbrs[i]]
                    if w == -1:
                        if du == limit:
                            ptr[u] = i
                            for uu in stack:
                                vv = adj[uu][ptr[uu]]
                                mate[uu] = vv
                                mate_r[vv] = uu
                            stack.clear()
                            pushed = True
                            break
                    elif dist[w] == du:
                        ptr[u] = i
                        stack.append(w)
                        pushed = True
                        break
                    i += 1
                if not pushed:
                    dist[u] = inf
                    stack.pop()
                    if stack:
                        ptr[stack[-1]] += 1


def gallai_edmonds(graph: BipartiteGraph, mate: Sequence[int],
                   radj: list[list[int]] | None = None) -> tuple[list[int], list[int]]:
    """EVEN/ODD/UNREACHABLE labels of both sides w.r.t. a maximum matching.

    A vertex is EVEN if some alternating path of even length joins it to a
    free vertex, ODD if some odd one does, UNREACHABLE otherwise.  EVEN
    vertices are exactly the non-critical ones.
    """
    adj = graph.adj
    if radj is None:
        radj = graph.right_adjacency()
    mate_r = right_mates(graph.n_right, mate)
    lab_l = [UNREACHABLE] * graph.n_left
    lab_r = [UNREACHABLE] * graph.n_right

    queue = [u for u in range(graph.n_left) if mate[u] == -1]
    for u in queue:
        lab_l[u] = EVEN
    for u in queue:
        for v in adj[u]:
            if lab_r[v] == UNREACHABLE:
                lab_r[v] = ODD
                w = mate_r[v]
                if w != -1 and lab_l[w] == UNREACHABLE:
                    lab_l[w] = EVEN
                    queue.append(w)

    queue = [v for v in range(graph.n_right) if mate_r[v] == -1]
    for v in queue:
        lab_r[v] = EVEN
    for v in queue:
        for u in radj[v]:
            if lab_l[u] == UNREACHABLE:
                lab_l[u] = ODD
                w = mate[u]
                if w != -1 and lab_r[w] == UNREACHABLE:
                    lab_r[w] = EVEN
                    queue.append(w)
    return lab_l, lab_r


@dataclass(frozen=True)
class CriticalSets:
    """Vertices matched in every maximum matching, as boolean masks."""

    applicants: tuple[bool, ...]
    jobs: tuple[bool, ...]

    def critical_applicants(self) -> set[int]:
        return {u for u, c in enumerate(self.applicants) if c}

    def critical_jobs(self) -> set[int]:
        return {v for v, c in enumerate(self.jobs) if c}


def critical_vertices(graph: BipartiteGraph, mate: Sequence[int],
                      radj: list[list[int]] | None = None) -> CriticalSets:
    """Critical vertices of both sides given a maximum matching ``mate``.

    Runs one alternating BFS per side (a Hungarian forest grown from the
    free vertices of that side); whatever the forest never reaches at even
    depth is critical.
    """
    lab_l, lab_r = gallai_edmonds(graph, mate, radj)
    return CriticalSets(tuple(lab != EVEN for lab in lab_l),
                        tuple(lab != EVEN for lab in lab_r))


def rank_maximal(graph: BipartiteGraph, max_rank: int) -> list[int]:
    """Rank-maximal matching by the phase algorithm of Irving et al.

    Phase ``i`` holds a maximum matching of the reduced graph of edges with
    rank <= i.  Before rank ``i + 1`` edges come in, the Gallai-Edmonds
    labels of the current matching decide what can never be used by a
    rank-maximal matching: every later edge at an ODD or UNREACHABLE vertex
    and every current ODD-ODD or ODD-UNREACHABLE edge.  Matched edges are
    EVEN-ODD or UNREACHABLE-UNREACHABLE, so they always survive.
    """
    if graph.ranks is None:
        raise ValueError("rank_maximal needs a graph with edge ranks")
    n, nr = graph.n_left, graph.n_right
    by_rank: list[list[tuple[int, int]]] = [[] for _ in range(max_rank + 1)]
    for u, (vs, rs) in enumerate(zip(graph.adj, graph.ranks)):
        for v, r in zip(vs, rs):
            if not 1 <= r <= max_rank:
                raise ValueError(f"edge {(u, v)} has rank {r} outside 1..{max_rank}")
            by_rank[r].append((u, v))

    blocked_l = bytearray(n)
    blocked_r = bytearray(nr)
    cur = BipartiteGraph(n, nr, [[] for _ in range(n)])
    mate = [-1] * n
    last = max((r for r in range(1, max_rank + 1) if by_rank[r]), default=0)
    for r in range(1, last + 1):
        added = False
        for u, v in by_rank[r]:
            if not blocked_l[u] and not blocked_r[v]:
                cur.adj[u].append(v)
                added = True
        if added:
            mate = max_matching(cur, mate)
        if r == last:
            break
        lab_l, lab_r = gallai_edmonds(cur, mate)
        for u in range(n):
            lu = lab_l[u]
            if lu != EVEN:
                blocked_l[u] = 1
                cur.adj[u] = [v for v in cur.adj[u]
                              if not (lab_r[v] != EVEN and (lu == ODD or lab_r[v] == ODD))]
        for v in range(nr):
            if lab_r[v] != EVEN:
                blocked_r[v] = 1
    return mate


def rank_signature(graph: BipartiteGraph, mate: Sequence[int], max_rank: int) -> tuple[int, ...]:
    """Counts of matched edges of rank 1..max_rank."""
    assert graph.ranks is not None
    sig = [0] * max_rank
    for u, v in enumerate(mate):
        if v != -1:
            sig[graph.ranks[u][graph.adj[u].index(v)] - 1] += 1
    return tuple(sig)


def alternating_exchange_path(graph: BipartiteGraph, mate: Sequence[int],
                              start_job: int) -> list[int] | None:
    """Shortest exchange path out of the matched job ``start_job``.

    The path is returned as ``[p0, x0, p1, x1, ..., pt]`` (jobs at even
    positions): ``(x_i, p_i)`` are matched, ``(x_i, p_{i+1})`` are not, and
    ``pt`` is free.  ``None`` when no such path exists.
    """
    mate_r = right_mates(graph.n_right, mate)
    if mate_r[start_job] == -1:
        raise ValueError(f"job {start_job} is not matched")
    parent = {start_job: -1}
    queue = [start_job]
    for p in queue:
        x = mate_r[p]
        for q in graph.adj[x]:
            if q in parent:
                continue
            parent[q] = p
            if mate_r[q] == -1:
                path = [q]
                while parent[path[-1]] != -1:
                    prev = parent[path[-1]]
                    path += [mate_r[prev], prev]
                return path[::-1]
            queue.append(q)
    return None
