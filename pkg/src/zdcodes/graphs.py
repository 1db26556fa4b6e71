"""Immutable simple undirected graphs: generators, metrics and file formats.

Vertices are dense integer indices; optional text labels ride along in a
sidecar map so solvers never see them.  Adjacency is kept as sorted edge
list plus per-vertex sets, and as per-vertex bitmasks once a graph is large
enough that set intersections start to hurt (BITSET_THRESHOLD vertices).
"""

from __future__ import annotations

import json
from collections import deque
from functools import cached_property

import numpy as np

BITSET_THRESHOLD = 64


class GraphError(ValueError):
    pass


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable once built."""

    __slots__ = ("n", "edges", "labels", "name", "__dict__")

    def __init__(self, n: int, edges, labels: dict[int, str] | None = None, name: str = "G"):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        norm = []
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a},{b}) out of range for n={n}")
            e = (a, b) if a < b else (b, a)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        self.n = n
        self.edges = tuple(sorted(norm))
        if labels is not None:
            bad = [v for v in labels if not (0 <= v < n)]
            if bad:
                raise GraphError(f"label for unknown vertex {bad[0]}")
        self.labels = dict(labels) if labels else None
        self.name = name

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)}, name={self.name!r})"

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        acc: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in self.edges:
            acc[a].add(b)
            acc[b].add(a)
        return tuple(frozenset(s) for s in acc)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.edges:
            adj[a, b] = True
            adj[b, a] = True
        adj.setflags(write=False)
        return adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self.neighbor_sets[v]

    def degree(self, v: int) -> int:
        return len(self.neighbor_sets[v])

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.neighbor_sets)

    def is_regular(self) -> int | None:
        """The common degree t when the graph is t-regular, else None."""
        if self.n == 0:
            return None
        degs = {len(s) for s in self.neighbor_sets}
        return degs.pop() if len(degs) == 1 else None

    def end_vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.degree(v) == 1)

    def relabeled(self, labels: dict[int, str] | None, name: str | None = None) -> "Graph":
        return Graph(self.n, self.edges, labels, name if name is not None else self.name)

    # -- traversal ---------------------------------------------------------

    def bfs_distances(self, source: int) -> list[int]:
        """-1 marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        q = deque([source])
        while q:
            v = q.popleft()
            for w in self.neighbor_sets[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbor_sets[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.is_connected() and len(self.edges) == self.n - 1

    def is_star(self) -> bool:
        """K_{1,k} for some k >= 1 (P_2 counts as K_{1,1})."""
        if self.n < 2 or len(self.edges) != self.n - 1:
            return False
        degs = sorted(self.degree(v) for v in range(self.n))
        return degs[-1] == self.n - 1 and all(d == 1 for d in degs[:-1])


def diameter(g: Graph) -> int | float:
    """Longest shortest-path length; inf when disconnected, 0 for n <= 1."""
    if g.n == 0:
        return 0
    best = 0
    for v in range(g.n):
        dist = g.bfs_distances(v)
        if min(dist) < 0:
            return float("inf")
        best = max(best, max(dist))
    return best


def articulation_points(g: Graph) -> frozenset[int]:
    """Cut vertices via iterative DFS low-link, per component."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    out: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        root_children = 0
        stack = [(root, iter(sorted(g.neighbor_sets[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(sorted(g.neighbor_sets[w]))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= disc[u]:
                        out.add(u)
        if root_children >= 2:
            out.add(root)
    return frozenset(out)


def is_matching(g: Graph, code) -> bool:
    """True when the subgraph induced by `code` is a perfect matching of
    `code` itself: every member has exactly one neighbour inside it.
    """
    cs = frozenset(code)
    bad = [v for v in cs if not (0 <= v < g.n)]
    if bad:
        raise GraphError(f"code vertex {bad[0]} out of range")
    return all(len(g.neighbor_sets[v] & cs) == 1 for v in cs)


# -- generators ------------------------------------------------------------


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def make_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"K{n}")


def make_complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise GraphError("complete bipartite needs m, n >= 1")
    return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)], name=f"K{m},{n}")


def make_star(n: int) -> Graph:
    if n < 1:
        raise GraphError("star needs n >= 1 leaves")
    g = make_complete_bipartite(1, n)
    return Graph(g.n, g.edges, name=f"star{n}")


def corona(g: Graph, h: Graph) -> Graph:
    """One copy of g plus |V(g)| copies of h; vertex i of g is joined to
    every vertex of copy i.  Indices: g first, then copies in order.
    """
    edges = list(g.edges)
    base = g.n
    for i in range(g.n):
        off = base + i * h.n
        edges.extend((off + a, off + b) for a, b in h.edges)
        edges.extend((i, off + a) for a in range(h.n))
    return Graph(g.n + g.n * h.n, edges, name=f"corona({g.name},{h.name})")


#: 8-vertex non-regular fixture; {0,1,6,7} is a total perfect code, which
#: shows an even-order non-regular graph can admit one.
FIXTURE8_EDGES = ((0, 1), (0, 3), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 7), (6, 7))


def fixture_graph8() -> Graph:
    return Graph(8, FIXTURE8_EDGES, name="fixture8")


# -- file formats ----------------------------------------------------------


def to_json_obj(g: Graph) -> dict:
    obj: dict = {"n": g.n, "edges": [[a, b] for a, b in g.edges]}
    if g.labels:
        obj["labels"] = {str(v): g.labels[v] for v in sorted(g.labels)}
    return obj


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g), indent=2, sort_keys=True) + "\n"


def from_json_obj(obj: dict, name: str = "G") -> Graph:
    labels = None
    if "labels" in obj and obj["labels"] is not None:
        labels = {int(k): str(v) for k, v in obj["labels"].items()}
    return Graph(int(obj["n"]), [tuple(e) for e in obj["edges"]], labels, name)


def from_json(text: str, name: str = "G") -> Graph:
    return from_json_obj(json.loads(text), name)


def to_dot(g: Graph) -> str:
    lines = [f'graph "{g.name}" {{']
    for v in range(g.n):
        if g.labels and v in g.labels:
            lines.append(f'  {v} [label="{g.labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for a, b in g.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
