"""The graph attached to a term's two-letter summands.

Vertices are the variables of the length-2 summands, with one undirected
edge per summand (xy and yx give the same edge, xx gives a loop). The key
construction is a bipartition forced to keep a given vertex set on one
side, which exists exactly when the graph has no odd cycle and no two of
the given vertices are joined by an odd-length path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .terms import Term, Variable, content, level


@dataclass(frozen=True)
class TermGraph:
    vertices: frozenset[Variable]
    #: sorted pairs; a loop appears as (x, x)
    edges: frozenset[tuple[Variable, Variable]]

    def adjacency(self) -> dict[Variable, list[Variable]]:
        adj: dict[Variable, set[Variable]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: sorted(adj[v]) for v in self.vertices}

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)


class OddCycleError(ValueError):
    """Graph contains an odd cycle; ``cycle`` lists its vertices in order."""

    def __init__(self, cycle: tuple[Variable, ...]):
        self.cycle = cycle
        super().__init__(f"odd cycle of length {len(cycle)}: {' - '.join(cycle)}")


class OddPathError(ValueError):
    """Two constrained vertices joined by an odd-length path."""

    def __init__(self, pair: tuple[Variable, Variable], path: tuple[Variable, ...]):
        self.pair = pair
        self.path = path
        super().__init__(
            f"vertices {pair[0]} and {pair[1]} are joined by an odd path "
            f"of length {len(path) - 1}"
        )


def graph_of(u: Term) -> TermGraph:
    """Graph on the variables of u's length-2 summands, one edge each."""
    two = level(2, u)
    vertices = frozenset(x for w in two for x in w.letters)
    edges = frozenset(tuple(sorted(w.letters)) for w in two)
    return TermGraph(vertices, edges)


def make_graph(edges, vertices=()) -> TermGraph:
    """Graph from edge pairs plus optional isolated vertices."""
    es = frozenset(tuple(sorted((a, b))) for a, b in edges)
    vs = frozenset(vertices) | frozenset(x for e in es for x in e)
    return TermGraph(vs, es)


def find_odd_cycle(G: TermGraph) -> list[Variable] | None:
    """Some odd cycle as a vertex list (consecutive pairs and the wrap-around
    pair are edges), or None when the graph is bipartite."""
    for a, b in sorted(G.edges):
        if a == b:
            return [a]
    adj = G.adjacency()
    parent: dict[Variable, Variable | None] = {}
    depth: dict[Variable, int] = {}
    for start in sorted(G.vertices):
        if start in depth:
            continue
        parent[start] = None
        depth[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in depth:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif y != parent[x] and (depth[x] + depth[y]) % 2 == 0:
                    return _tree_cycle(parent, depth, x, y)
    return None


def _tree_cycle(parent, depth, x, y) -> list[Variable]:
    # walk both endpoints up to their lowest common ancestor; the two tree
    # paths plus the conflict edge form a simple odd cycle
    px, py = [x], [y]
    while depth[px[-1]] > depth[py[-1]]:
        px.append(parent[px[-1]])
    while depth[py[-1]] > depth[px[-1]]:
        py.append(parent[py[-1]])
    while px[-1] != py[-1]:
        px.append(parent[px[-1]])
        py.append(parent[py[-1]])
    return px + py[-2::-1]


def is_bipartite(G: TermGraph) -> bool:
    return find_odd_cycle(G) is None


def odd_path_exists(G: TermGraph, x: Variable, y: Variable) -> bool:
    """Whether some odd-length walk connects x and y.

    Walk parity equals path parity in bipartite graphs; in a component with
    an odd cycle every pair is connected by walks of both parities, so this
    matches the path reading wherever the bipartition machinery uses it.
    """
    if x == y:
        raise ValueError("endpoints must be distinct")
    if x not in G.vertices or y not in G.vertices:
        missing = x if x not in G.vertices else y
        raise ValueError(f"vertex {missing!r} not in graph")
    adj = G.adjacency()
    seen = {(x, 0)}
    queue = deque([(x, 0)])
    while queue:
        v, par = queue.popleft()
        for w in adj[v]:
            state = (w, par ^ 1)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return (y, 1) in seen


def constrained_bipartition(
    G: TermGraph, H: frozenset[Variable] | set[Variable]
) -> tuple[frozenset[Variable], frozenset[Variable]]:
    """Bipartition (Y, Z) of G with H inside Y.

    Per component the side Y collects the vertices at even distance from a
    representative, chosen inside H when the component meets H (least vertex
    wins either way). Raises OddCycleError when G is not bipartite and
    OddPathError when two H-vertices sit at odd distance.
    """
    H = frozenset(H)
    stray = H - G.vertices
    if stray:
        raise ValueError(f"constrained vertices not in graph: {sorted(stray)}")
    cycle = find_odd_cycle(G)
    if cycle is not None:
        raise OddCycleError(tuple(cycle))

    adj = G.adjacency()
    assigned: set[Variable] = set()
    Y: set[Variable] = set()
    Z: set[Variable] = set()
    for start in sorted(G.vertices):
        if start in assigned:
            continue
        comp: list[Variable] = []
        queue = deque([start])
        assigned.add(start)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in adj[x]:
                if y not in assigned:
                    assigned.add(y)
                    queue.append(y)
        h_in = sorted(set(comp) & H)
        rep = h_in[0] if h_in else min(comp)
        depth = {rep: 0}
        parent: dict[Variable, Variable | None] = {rep: None}
        queue = deque([rep])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    queue.append(y)
        for h in h_in:
            if depth[h] % 2 == 1:
                path = [h]
                while path[-1] != rep:
                    path.append(parent[path[-1]])
                raise OddPathError((rep, h), tuple(reversed(path)))
        for v in comp:
            (Y if depth[v] % 2 == 0 else Z).add(v)
    return frozenset(Y), frozenset(Z)
