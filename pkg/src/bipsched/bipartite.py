"""Bipartite graph algorithms.

Provides the vertex-weighted bipartite graph container plus the four
subroutines the schedulers rely on: certified 2-coloring, inequitable
2-coloring, maximum matching (Hopcroft-Karp) and maximum-weight independent
sets via max-flow/min-cut, optionally constrained to contain a prescribed
independent set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotBipartiteError


def _two_color(n: int, adj: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """BFS 2-coloring; component roots (smallest unvisited id) get side 0.

    Raises NotBipartiteError with an odd-closed-walk witness on failure.
    """
    side = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if side[v] == -1:
                    side[v] = side[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    raise NotBipartiteError(_odd_walk(u, v, parent))
    return tuple(side)


def _odd_walk(u: int, v: int, parent: Sequence[int]) -> list[int]:
    """Closed odd walk through the offending edge {u, v} and the BFS tree."""
    anc_u = [u]
    while parent[anc_u[-1]] != -1:
        anc_u.append(parent[anc_u[-1]])
    anc_v = [v]
    while parent[anc_v[-1]] != -1:
        anc_v.append(parent[anc_v[-1]])
    # strip the common tail above the lowest common ancestor
    while len(anc_u) > 1 and len(anc_v) > 1 and anc_u[-2] == anc_v[-2]:
        anc_u.pop()
        anc_v.pop()
    return anc_u + anc_v[-2::-1] + [u]


class BipGraph:
    """Simple bipartite graph with positive integer vertex weights.

    Edges are canonicalized (sorted, deduplicated, (lo, hi) order); self-loops
    are rejected. A proper 2-coloring is computed at construction time, so any
    existing BipGraph is certified bipartite: non-bipartite edge sets raise
    NotBipartiteError from the constructor.
    """

    def __init__(self, n_vertices: int,
                 edges: Iterable[tuple[int, int]] = (),
                 weights: Sequence[int] | None = None):
        if n_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n_vertices and 0 <= b < n_vertices):
                raise ValueError(f"edge ({a}, {b}) out of range for {n_vertices} vertices")
            canon.add((a, b) if a < b else (b, a))
        self.n_vertices = n_vertices
        self.edges = tuple(sorted(canon))
        if weights is None:
            self.weights = (1,) * n_vertices
        else:
            ws = tuple(int(w) for w in weights)
            if len(ws) != n_vertices:
                raise ValueError("one weight per vertex required")
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive integers")
            self.weights = ws
        self.side = _two_color(n_vertices, self.adjacency)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(nb)) for nb in adj)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, each sorted, ordered by smallest member."""
        seen = [False] * self.n_vertices
        comps = []
        for root in range(self.n_vertices):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def total_weight(self, vertices: Iterable[int]) -> int:
        return sum(self.weights[v] for v in vertices)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (vs & set(self.adjacency[v])) for v in vs)

    def induced(self, keep: Sequence[int]) -> tuple["BipGraph", dict[int, int]]:
        """Subgraph on ``keep``; returns it with the old->new index map."""
        keep = sorted(keep)
        to_new = {v: i for i, v in enumerate(keep)}
        edges = [(to_new[a], to_new[b]) for a, b in self.edges
                 if a in to_new and b in to_new]
        weights = [self.weights[v] for v in keep]
        return BipGraph(len(keep), edges, weights), to_new

    def __repr__(self):
        return f"BipGraph(n={self.n_vertices}, edges={len(self.edges)})"


@dataclass(frozen=True)
class TwoColoring:
    """Proper 2-coloring; side values are 0 ('A') and 1 ('B')."""

    side: tuple[int, ...]


def bipartition(g: BipGraph) -> TwoColoring:
    """The BFS 2-coloring certified at construction (isolated vertices: side 0)."""
    return TwoColoring(g.side)


def inequitable_two_coloring(g: BipGraph) -> tuple[frozenset[int], frozenset[int]]:
    """Proper 2-coloring (V1, V2) maximizing the total weight of V1.

    Per component the heavier side goes to V1; on ties the side containing the
    smallest vertex id of the component wins. Runs in O(|V| + |E|).
    """
    v1: list[int] = []
    v2: list[int] = []
    for comp in g.components:
        side0 = [v for v in comp if g.side[v] == 0]
        side1 = [v for v in comp if g.side[v] == 1]
        w0 = g.total_weight(side0)
        w1 = g.total_weight(side1)
        # comp[0] is the BFS root, always on side 0, so ties favor side 0
        if w0 >= w1:
            v1 += side0
            v2 += side1
        else:
            v1 += side1
            v2 += side0
    return frozenset(v1), frozenset(v2)


_INF = -1


def max_matching(g: BipGraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Maximum-cardinality matching via Hopcroft-Karp layered phases.

    Returns (size, matched edge list); the edge list is a deterministic
    function of the canonical edge order.
    """
    left = [v for v in range(g.n_vertices) if g.side[v] == 0]
    pair = [-1] * g.n_vertices
    dist = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if pair[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        reachable_free = False
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                w = pair[v]
                if w == -1:
                    reachable_free = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return reachable_free

    def dfs(u: int) -> bool:
        # iterative alternating-path search; augmenting paths can be long, so
        # recursion is avoided. Frames hold [left vertex, adjacency index].
        stack = [[u, 0]]
        while stack:
            frame = stack[-1]
            x, idx = frame
            adj = g.adjacency[x]
            pushed = False
            while idx < len(adj):
                v = adj[idx]
                w = pair[v]
                if w == -1:
                    frame[1] = idx
                    for fx, fi in stack:
                        fv = g.adjacency[fx][fi]
                        pair[fx] = fv
                        pair[fv] = fx
                    return True
                if dist[w] == dist[x] + 1:
                    frame[1] = idx
                    stack.append([w, 0])
                    pushed = True
                    break
                idx += 1
            if not pushed:
                dist[x] = _INF
                stack.pop()
                if stack:
                    stack[-1][1] += 1
        return False

    size = 0
    while bfs():
        for u in left:
            if pair[u] == -1 and dfs(u):
                size += 1
    edges = tuple(sorted((u, pair[u]) if u < pair[u] else (pair[u], u)
                         for u in left if pair[u] != -1))
    return size, edges


class _Dinic:
    """Max-flow on a small layered network with integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.graph: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.graph[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.graph[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for eid in self.graph[u]:
                    if self.cap[eid] > 0 and level[self.to[eid]] == -1:
                        level[self.to[eid]] = level[u] + 1
                        queue.append(self.to[eid])
            if level[t] == -1:
                return flow
            it = [0] * self.n

            def push(u: int, f: int) -> int:
                if u == t:
                    return f
                while it[u] < len(self.graph[u]):
                    eid = self.graph[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        got = push(v, min(f, self.cap[eid]))
                        if got > 0:
                            self.cap[eid] -= got
                            self.cap[eid ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = push(s, 1 << 62)
                if pushed == 0:
                    break
                flow += pushed

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for eid in self.graph[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def max_weight_independent_set(g: BipGraph) -> frozenset[int]:
    """Maximum total-weight independent set.

    Complement of a minimum-weight vertex cover read off a min S-T cut of the
    standard source -> side A -> side B -> sink network with vertex-weight
    capacities.
    """
    n = g.n_vertices
    src, sink = n, n + 1
    net = _Dinic(n + 2)
    big = sum(g.weights) + 1
    for v in range(n):
        if g.side[v] == 0:
            net.add_edge(src, v, g.weights[v])
        else:
            net.add_edge(v, sink, g.weights[v])
    for a, b in g.edges:
        u, v = (a, b) if g.side[a] == 0 else (b, a)
        net.add_edge(u, v, big)
    flow = net.max_flow(src, sink)
    reach = net.residual_reachable(src)
    # cover = (A not reached) | (B reached); independent set is the complement
    result = frozenset(v for v in range(n)
                       if (g.side[v] == 0) == (v in reach))
    assert g.total_weight(result) == sum(g.weights) - flow
    return result


def independent_set_containing(g: BipGraph,
                               required: Iterable[int]) -> frozenset[int] | None:
    """Maximum-weight independent set containing all of ``required``.

    None when ``required`` itself is not independent. Otherwise equals
    ``required`` united with a maximum-weight independent set of the graph
    left after removing the closed neighborhood of ``required``.
    """
    req = frozenset(required)
    if not g.is_independent(req):
        return None
    closed = set(req)
    for v in req:
        closed.update(g.adjacency[v])
    keep = [v for v in range(g.n_vertices) if v not in closed]
    if not keep:
        return req
    sub, to_new = g.induced(keep)
    to_old = {i: v for v, i in to_new.items()}
    rest = max_weight_independent_set(sub)
    return req | frozenset(to_old[i] for i in rest)
