"""Bipartite coefficient-pattern graphs and Feynman-style multigraphs.

Pattern graphs encode which entries of a coefficient matrix are nonzero:
left vertices 0..k are matrix rows, right vertices k+1..n are columns, and
an edge (i, j) means entry z_ij is a free variable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Optional, Sequence, Tuple

from .errors import HypothesisError, InputError, SizeLimitError

__all__ = [
    "PatternGraph",
    "BipartiteSubgraph",
    "CosmoGraph",
    "SubgraphSelection",
    "induced",
    "is_connected",
    "neighborhood",
    "saturating_matching",
    "hall_obstruction",
    "condition_star",
    "star_violation",
    "contract",
    "connected_subgraphs",
]


class PatternGraph:
    """Bipartite graph with left vertices 0..L-1 and right vertices L..L+R-1."""

    __slots__ = ("left_size", "right_size", "edges")

    def __init__(self, left_size: int, right_size: int, edges):
        edges = frozenset((int(i), int(j)) for i, j in edges)
        if left_size < 1 or right_size < 1:
            raise InputError("both sides must be nonempty")
        if not edges:
            raise InputError("edge set must be nonempty")
        L = left_size
        for i, j in edges:
            if not (0 <= i < L and L <= j < L + right_size):
                raise InputError(f"edge ({i}, {j}) out of range")
        covered = {v for e in edges for v in e}
        missing = set(range(L + right_size)) - covered
        if missing:
            raise InputError(f"isolated vertices not allowed: {sorted(missing)}")
        self.left_size = left_size
        self.right_size = right_size
        self.edges = edges

    @property
    def left(self) -> Tuple[int, ...]:
        return tuple(range(self.left_size))

    @property
    def right(self) -> Tuple[int, ...]:
        return tuple(range(self.left_size, self.left_size + self.right_size))

    def edge_order(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def var_name(self, i: int, j: int) -> str:
        return f"z{i}{j}" if max(self.left_size + self.right_size - 1, 9) <= 9 else f"z{i}_{j}"

    @classmethod
    def from_dict(cls, data) -> "PatternGraph":
        try:
            return cls(int(data["left"]), int(data["right"]),
                       [(int(i), int(j)) for i, j in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad pattern graph description: {exc}") from None

    def __eq__(self, other):
        return (
            isinstance(other, PatternGraph)
            and (self.left_size, self.right_size, self.edges)
            == (other.left_size, other.right_size, other.edges)
        )

    def __hash__(self):
        return hash((self.left_size, self.right_size, self.edges))

    def __repr__(self):
        return f"PatternGraph({self.left_size}, {self.right_size}, {sorted(self.edges)})"


@dataclass(frozen=True)
class BipartiteSubgraph:
    """Induced subgraph of a PatternGraph; isolated vertices are retained."""

    left: Tuple[int, ...]
    right: Tuple[int, ...]
    edges: FrozenSet[Tuple[int, int]]

    @property
    def vertices(self):
        return self.left + self.right


def _sides(g):
    if isinstance(g, PatternGraph):
        return g.left, g.right, g.edges
    return tuple(g.left), tuple(g.right), g.edges


def induced(g: PatternGraph, I, J) -> BipartiteSubgraph:
    """Subgraph induced by I (left) and J (right), keeping isolated vertices."""
    I = tuple(sorted(I))
    J = tuple(sorted(J))
    left, right, edges = _sides(g)
    if not set(I) <= set(left) or not set(J) <= set(right):
        raise InputError("induced subgraph vertices must come from the graph")
    keep = frozenset(e for e in edges if e[0] in set(I) and e[1] in set(J))
    return BipartiteSubgraph(I, J, keep)


def is_connected(g) -> bool:
    """True iff the vertex set (isolated vertices included) is one component."""
    if isinstance(g, CosmoGraph):
        vertices = list(range(1, g.vertex_count + 1))
        adj = {v: set() for v in vertices}
        for i, j, _ in g.edges:
            adj[i].add(j)
            adj[j].add(i)
    else:
        left, right, edges = _sides(g)
        vertices = list(left) + list(right)
        adj = {v: set() for v in vertices}
        for i, j in edges:
            adj[i].add(j)
            adj[j].add(i)
    if not vertices:
        return True
    seen = {vertices[0]}
    queue = deque([vertices[0]])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vertices)


def neighborhood(g, T) -> frozenset:
    """All vertices joined by an edge to some element of T."""
    _, _, edges = _sides(g)
    T = set(T)
    out = set()
    for i, j in edges:
        if i in T:
            out.add(j)
        if j in T:
            out.add(i)
    return frozenset(out)


def _adjacency(edges, from_left: bool):
    adj = {}
    for i, j in edges:
        a, b = (i, j) if from_left else (j, i)
        adj.setdefault(a, []).append(b)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def saturating_matching(g, side: str = "left"):
    """Matching covering the chosen side via augmenting paths, or None."""
    left, right, edges = _sides(g)
    if side not in ("left", "right"):
        raise InputError("side must be 'left' or 'right'")
    source = left if side == "left" else right
    adj = _adjacency(edges, from_left=(side == "left"))
    match_src = {}
    match_dst = {}

    def augment(u, visited):
        for v in adj.get(u, ()):
            if v in visited:
                continue
            visited.add(v)
            if v not in match_dst or augment(match_dst[v], visited):
                match_src[u] = v
                match_dst[v] = u
                return True
        return False

    for u in source:
        if not augment(u, set()):
            return None
    if side == "left":
        return dict(sorted(match_src.items()))
    return {v: u for u, v in sorted(match_src.items())}


def hall_obstruction(g, side: str = "left"):
    """A subset W of the chosen side with |N(W)| < |W|, or None if saturable."""
    left, right, edges = _sides(g)
    source = left if side == "left" else right
    adj = _adjacency(edges, from_left=(side == "left"))
    matching = saturating_matching(g, side)
    if matching is not None:
        return None
    # Rebuild a maximum matching, then grow the alternating tree from an
    # unmatched source vertex; the reached source vertices violate Hall.
    match_src = {}
    match_dst = {}

    def augment(u, visited):
        for v in adj.get(u, ()):
            if v in visited:
                continue
            visited.add(v)
            if v not in match_dst or augment(match_dst[v], visited):
                match_src[u] = v
                match_dst[v] = u
                return True
        return False

    free = None
    for u in source:
        if not augment(u, set()):
            free = u
    reached_src = {free}
    reached_dst = set()
    changed = True
    while changed:
        changed = False
        for u in list(reached_src):
            for v in adj.get(u, ()):
                if v not in reached_dst:
                    reached_dst.add(v)
                    changed = True
                    if v in match_dst and match_dst[v] not in reached_src:
                        reached_src.add(match_dst[v])
    return frozenset(reached_src)


def condition_star(g) -> bool:
    """Expansion condition on a balanced bipartite (sub)graph.

    True iff either the left side is a single vertex and the graph is
    connected, or every nonempty proper subset W of the left side satisfies
    |W| < |N(W)|.
    """
    return star_violation(g) is None


def star_violation(g):
    """None when the condition holds, else a witness (a bad subset W or ())."""
    left, right, edges = _sides(g)
    if len(left) != len(right):
        raise InputError("condition requires equal side sizes")
    if len(left) > 12:
        raise SizeLimitError("left side larger than 12")
    if len(left) == 1:
        return None if is_connected(g) else ()
    for size in range(1, len(left)):
        for W in combinations(left, size):
            if len(neighborhood(g, W)) <= len(W):
                return frozenset(W)
    return None


def contract(g, h: BipartiteSubgraph):
    """Edges surviving the contraction of a connected subgraph.

    Returns (surviving_vertices, [(edge, surviving_endpoints), ...]) where
    surviving_endpoints lists the endpoints of the edge outside V(h); the
    contracted vertex itself is dropped from the coordinate set.
    """
    left, right, edges = _sides(g)
    if not is_connected(h):
        raise HypothesisError("can only contract a connected subgraph")
    inside = set(h.vertices)
    if not set(h.edges) <= set(edges):
        raise InputError("subgraph edges must come from the graph")
    survivors = tuple(v for v in list(left) + list(right) if v not in inside)
    out = []
    for e in sorted(set(edges) - set(h.edges)):
        out.append((e, tuple(v for v in e if v not in inside)))
    return survivors, out


# ---------------------------------------------------------------------------
# Feynman-style graphs (parallel edges allowed)


class CosmoGraph:
    """Connected multigraph on vertices 1..n; parallel edges carry unique ids."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges: Sequence[Tuple[int, int, str]]):
        edges = tuple((int(i), int(j), str(eid)) for i, j, eid in edges)
        if vertex_count < 1:
            raise InputError("need at least one vertex")
        ids = [eid for _, _, eid in edges]
        if len(set(ids)) != len(ids):
            raise InputError("edge ids must be unique")
        for i, j, _ in edges:
            if not (1 <= i <= j <= vertex_count):
                raise InputError(f"edge ({i}, {j}) out of range (need i <= j)")
        self.vertex_count = vertex_count
        self.edges = edges
        if not is_connected(self):
            raise HypothesisError("graph must be connected")

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs) -> "CosmoGraph":
        """Build from (i, j) pairs; parallel edges get letter ids a, b, ..."""
        pairs = [tuple(sorted((int(i), int(j)))) for i, j in pairs]
        counts = {}
        for p in pairs:
            counts[p] = counts.get(p, 0) + 1
        letters = iter("abcdefghijklmnopqrstuvwxyz")
        edges = []
        for p in pairs:
            if counts[p] == 1:
                edges.append((p[0], p[1], f"{p[0]}{p[1]}"))
            else:
                edges.append((p[0], p[1], next(letters)))
        return cls(vertex_count, edges)

    @classmethod
    def from_dict(cls, data) -> "CosmoGraph":
        try:
            return cls.from_pairs(int(data["vertices"]), data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad graph description: {exc}") from None

    def is_tree(self) -> bool:
        return len(self.edges) == self.vertex_count - 1

    def __repr__(self):
        return f"CosmoGraph({self.vertex_count}, {list(self.edges)})"


@dataclass(frozen=True)
class SubgraphSelection:
    """A vertex subset together with an endpoint-closed edge-id subset."""

    vertices: Tuple[int, ...]
    edge_ids: Tuple[str, ...]


def connected_subgraphs(g: CosmoGraph, max_vertices: int = 8, max_edges: int = 12):
    """All connected subgraphs (V, E) with E inside the edges induced on V.

    Deterministic order: by |V|, then the sorted vertex tuple, then the
    sorted edge-id tuple.
    """
    if g.vertex_count > max_vertices or len(g.edges) > max_edges:
        raise SizeLimitError(
            f"graph exceeds bounds ({max_vertices} vertices / {max_edges} edges)"
        )
    out = []
    vertices = list(range(1, g.vertex_count + 1))
    for size in range(1, g.vertex_count + 1):
        for V in combinations(vertices, size):
            vs = set(V)
            inside = [e for e in g.edges if e[0] in vs and e[1] in vs]
            for esize in range(len(inside) + 1):
                for E in combinations(inside, esize):
                    if _connected_on(V, E):
                        out.append(
                            SubgraphSelection(V, tuple(sorted(e[2] for e in E)))
                        )
    return out


def _connected_on(V, E) -> bool:
    if len(V) == 1:
        return True
    adj = {v: set() for v in V}
    for i, j, _ in E:
        adj[i].add(j)
        adj[j].add(i)
    seen = {V[0]}
    queue = deque([V[0]])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(V)
