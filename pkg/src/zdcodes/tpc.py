"""Total perfect code machinery for abstract graphs.

A total perfect code (efficient open dominating set) is a vertex set C with
|N(v) & C| = 1 for every vertex v, members of C included.  This module has
the verifier, the exact backtracking oracle, a linear tree dynamic program
and the closed-form deciders for paths, cycles, complete and complete
bipartite graphs, each returning a constructive code that the verifier
accepts.

Conventions (degenerate inputs are legal everywhere):

* the empty graph vacuously admits the empty code;
* a single vertex admits none (its neighbourhood is empty);
* disconnected graphs admit one iff every component does, and the solver
  handles them without splitting.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from . import config, kernels
from .graphs import Graph, GraphError, make_complete_bipartite

CodeSet = frozenset


@dataclass(frozen=True)
class Verdict:
    """Outcome of one decider on one instance."""

    admits: bool
    witness: frozenset[int] | None
    decider_id: str
    cross_checked: bool = False

    def __post_init__(self):
        if self.admits and self.witness is None:
            raise ValueError("an admitting verdict needs a witness")


def is_total_perfect_code(g: Graph, code) -> bool:
    """Every vertex, code members included, has exactly one neighbour in
    `code`."""
    cs = frozenset(int(v) for v in code)
    for v in cs:
        if not (0 <= v < g.n):
            raise GraphError(f"code vertex {v} out of range")
    if g.n > 64:
        cmask = 0
        for v in cs:
            cmask |= 1 << v
        return all((g.neighbor_masks[v] & cmask).bit_count() == 1 for v in range(g.n))
    return all(len(g.neighbor_sets[v] & cs) == 1 for v in range(g.n))


def find_tpc(g: Graph, bound: int | None = None) -> frozenset[int] | None:
    """Lexicographically least total perfect code under sorted-vertex order,
    or None.  Warns when the graph exceeds the configured search bound but
    searches anyway.
    """
    limit = bound if bound is not None else config.current().solver_bound
    if g.n > limit:
        warnings.warn(
            f"exact search on {g.n} vertices exceeds the bound {limit}; "
            "this may be slow",
            RuntimeWarning,
            stacklevel=2,
        )
    return kernels.search_first_code(g.n, [sorted(s) for s in g.neighbor_sets])


class EnumerationBoundError(ValueError):
    pass


def enumerate_tpcs(g: Graph, bound: int | None = None) -> list[frozenset[int]]:
    """Every total perfect code, lexicographically ordered."""
    limit = bound if bound is not None else config.current().enum_bound
    if g.n > limit:
        raise EnumerationBoundError(
            f"enumeration over {g.n} vertices exceeds the bound {limit}; "
            "use find_tpc for a single witness"
        )
    hits = kernels.search_codes(g.n, [sorted(s) for s in g.neighbor_sets], limit=65536)
    if len(hits) >= 65536:  # pragma: no cover - unreachable at the 24-vertex bound
        raise RuntimeError("solution buffer exhausted")
    return hits


# -- tree dynamic program ----------------------------------------------------


class NotATreeError(ValueError):
    pass


def tree_tpc(t: Graph, force_include: int | None = None) -> frozenset[int] | None:
    """Linear dynamic program over a rooted orientation of the tree.

    Per vertex and choice (in-code c, code-children s in {0,1}) feasibility
    is combined bottom-up; a child hanging under a parent with membership c
    must have collected exactly 1-c code children, so its own total count
    lands on one.  With `force_include` the returned code must contain that
    vertex (used for the existential "v lies in some code" preconditions).

    Agrees with find_tpc on existence by construction; the suites assert it.
    """
    if not t.is_tree():
        raise NotATreeError("input is not a tree (connected with |E| = |V|-1)")
    n = t.n
    if n == 1:
        return None
    root = force_include if force_include is not None else 0
    parent = [-1] * n
    order = [root]
    for v in order:
        for w in sorted(t.neighbor_sets[v]):
            if w != parent[v] and parent[w] == -1 and w != root:
                parent[w] = v
                order.append(w)
    children = [[] for _ in range(n)]
    for v in order[1:]:
        children[parent[v]].append(v)

    # feasible[v][c][s];  pick[v][c][s] = child designated as the code child
    feasible = [[[False, False], [False, False]] for _ in range(n)]
    pick = [[[None, None], [None, None]] for _ in range(n)]
    for v in reversed(order):
        for c in (0, 1):
            if force_include is not None and v == force_include and c == 0:
                continue
            need = 1 - c  # each child must hold exactly this many code children
            ok_out = all(feasible[u][0][need] for u in children[v])
            feasible[v][c][0] = ok_out
            if ok_out:
                for u in children[v]:
                    if feasible[u][1][need]:
                        feasible[v][c][1] = True
                        pick[v][c][1] = u
                        break
            else:
                # one child may be unable to stay out; it must be the code child
                blocked = [u for u in children[v] if not feasible[u][0][need]]
                if len(blocked) == 1 and feasible[blocked[0]][1][need]:
                    feasible[v][c][1] = True
                    pick[v][c][1] = blocked[0]

    root_c = next((c for c in (0, 1) if feasible[root][c][1]), None)
    if root_c is None:
        return None

    code: set[int] = set()
    stack = [(root, root_c, 1)]
    while stack:
        v, c, s = stack.pop()
        if c:
            code.add(v)
        chosen = pick[v][c][s]
        need = 1 - c
        for u in children[v]:
            if u == chosen:
                stack.append((u, 1, need))
            else:
                stack.append((u, 0, need))
    return frozenset(code)


# -- closed-form deciders ----------------------------------------------------


def path_decider(n: int) -> bool:
    """Paths admit a code except when n is 1 modulo 4."""
    if n < 2:
        raise ValueError("path decider needs n >= 2")
    return n % 4 != 1


def path_code(n: int) -> frozenset[int]:
    """The constructive code (0-indexed) for an admitting path length:
    pairs {1,2},{5,6},... for n = 0 mod 4, {0,1},{4,5},... otherwise.
    """
    if not path_decider(n):
        raise ValueError(f"P_{n} admits no total perfect code (n = 1 mod 4)")
    if n == 2:
        return frozenset({0, 1})
    r = n % 4
    if r == 0:
        start = 1  # …, {n-3, n-2} 0-indexed
    else:  # r in (2, 3)
        start = 0
    return frozenset(v for p in range(start, n - 1, 4) for v in (p, p + 1))


def cycle_decider(n: int) -> bool:
    if n < 3:
        raise ValueError("cycle decider needs n >= 3")
    return n % 4 == 0


def cycle_code(n: int) -> frozenset[int]:
    if not cycle_decider(n):
        raise ValueError(f"C_{n} admits no total perfect code (n != 0 mod 4)")
    return frozenset(v for p in range(0, n, 4) for v in (p, p + 1))


def complete_decider(n: int) -> bool:
    if n < 2:
        raise ValueError("complete decider needs n >= 2")
    return n == 2


def complete_bipartite_code(m: int, n: int) -> frozenset[int]:
    """First vertex of each part; any cross pair works in K_{m,n}."""
    if m < 1 or n < 1:
        raise ValueError("complete bipartite needs m, n >= 1")
    code = frozenset({0, m})
    assert is_total_perfect_code(make_complete_bipartite(m, n), code)
    return code


def regular_parity_check(g: Graph) -> bool | None:
    """Some(False) when a t-regular graph has odd order (no code can
    exist); None otherwise - even order alone proves nothing.
    """
    t = g.is_regular()
    if t is not None and t >= 1 and g.n % 2 == 1:
        return False
    return None


# -- end-vertex probe --------------------------------------------------------


@dataclass(frozen=True)
class EndVertexReport:
    """Empirical probe: does some code avoid every end vertex?  The claim
    holds for some graphs and provably fails for others (P_7), so this is
    reporting, never an assumed fact.
    """

    excluded: bool  # hypothesis not met (order < 3 or a star)
    tpc_exists: bool
    some_code_avoids_ends: bool | None
    codes_checked: int
    note: str = ""
    findings: tuple[str, ...] = field(default_factory=tuple)


def end_vertex_analysis(g: Graph, bound: int | None = None) -> EndVertexReport:
    codes = enumerate_tpcs(g, bound=bound)
    if not codes:
        return EndVertexReport(False, False, None, 0, note="no code exists")
    excluded = g.n < 3 or g.is_star()
    ends = g.end_vertices()
    avoids = any(not (c & ends) for c in codes)
    note = "hypothesis excluded (order < 3 or star)" if excluded else ""
    findings: tuple[str, ...] = ()
    if not excluded and not avoids:
        findings = (
            f"graph {g.name}: every one of {len(codes)} codes touches an end vertex",
        )
    return EndVertexReport(excluded, True, avoids, len(codes), note, findings)
