"""Immutable undirected simple graphs and their path metric.

Vertices are the integers ``0..n-1``.  Vertex sets are plain ``frozenset``
objects; annotations are named vertex sets or vertex maps (``dict[int, int]``)
that constructions use to tag corners, copies, shadows and similar.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from collections.abc import Iterable, Mapping
from functools import cached_property
from types import MappingProxyType
from typing import Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from copnum.errors import EmptyGraph, InvalidInput, NoPath

UNREACHABLE = int(np.iinfo(np.uint16).max)
MAX_VERTICES = UNREACHABLE - 1

VertexSet = frozenset
Annotation = Union[frozenset, Mapping]


def _freeze_annotation(name: str, value, n: int) -> Annotation:
    if isinstance(value, Mapping):
        items = sorted((int(k), val) for k, val in value.items())
        for key, _ in items:
            if not 0 <= key < n:
                raise InvalidInput(f"annotation {name!r}: vertex {key} out of range")
        return MappingProxyType(dict(items))
    members = frozenset(int(x) for x in value)
    for x in members:
        if not 0 <= x < n:
            raise InvalidInput(f"annotation {name!r}: vertex {x} out of range")
    return members


class Graph:
    """Undirected simple graph with sorted neighbour tuples.

    Use :func:`build_graph` to construct one from an edge list.
    """

    def __init__(self, adjacency: tuple[tuple[int, ...], ...], annotations: Mapping[str, Annotation] | None = None):
        self._adj = adjacency
        self._annotations = MappingProxyType(
            {k: _freeze_annotation(k, v, len(adjacency)) for k, v in sorted((annotations or {}).items())}
        )

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def annotations(self) -> Mapping[str, Annotation]:
        return self._annotations

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj[u]
        i = bisect_left(nb, v)
        return i < len(nb) and nb[i] == v

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u, nb in enumerate(self._adj) for v in nb if u < v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj), default=0)

    @cached_property
    def csr(self) -> csr_matrix:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(nb) for nb in self._adj])
        indices = np.fromiter((v for nb in self._adj for v in nb), dtype=np.int32, count=int(indptr[-1]))
        data = np.ones(len(indices), dtype=np.int8)
        return csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def with_annotations(self, annotations: Mapping[str, Annotation]) -> Graph:
        merged = dict(self._annotations)
        merged.update(annotations)
        return Graph(self._adj, merged)

    def same_structure(self, other: Graph) -> bool:
        return self._adj == other._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and _plain(self._annotations) == _plain(other._annotations)

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    def __reduce__(self):
        # mapping proxies do not pickle; rebuild from plain dicts in worker processes
        return (Graph, (self._adj, _plain(self._annotations)))


def _plain(ann: Mapping[str, Annotation]) -> dict:
    return {k: (dict(v) if isinstance(v, Mapping) else v) for k, v in ann.items()}


def build_graph(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    annotations: Mapping[str, Annotation] | None = None,
) -> Graph:
    """Build a graph, deduplicating repeated and reversed pairs."""
    if vertex_count < 1:
        raise EmptyGraph("a graph needs at least one vertex")
    if vertex_count > MAX_VERTICES:
        raise InvalidInput(f"at most {MAX_VERTICES} vertices are supported")
    nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidInput(f"edge ({u},{v}) has an endpoint outside [0,{vertex_count})")
        if u == v:
            raise InvalidInput(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(tuple(tuple(sorted(s)) for s in nbrs), annotations)


class DistanceMatrix:
    """All-pairs BFS distances stored as uint16, computed row by row on demand.

    Rows are cached; ``array`` materializes the whole table.  Unreachable
    pairs hold :data:`UNREACHABLE`.
    """

    ROW_CACHE = 8192
    CHUNK = 256

    def __init__(self, graph: Graph):
        self.graph = graph
        self._full: np.ndarray | None = None
        self._rows: dict[int, np.ndarray] = {}

    @property
    def n(self) -> int:
        return self.graph.n

    def _compute(self, sources) -> np.ndarray:
        d = shortest_path(self.graph.csr, directed=False, unweighted=True, indices=sources)
        d = np.atleast_2d(d)
        out = np.full(d.shape, UNREACHABLE, dtype=np.uint16)
        finite = np.isfinite(d)
        out[finite] = d[finite].astype(np.uint16)
        return out

    def row(self, u: int) -> np.ndarray:
        if self._full is not None:
            return self._full[u]
        r = self._rows.get(u)
        if r is None:
            if len(self._rows) >= self.ROW_CACHE:
                self._rows.clear()
            r = self._compute([u])[0]
            r.setflags(write=False)
            self._rows[u] = r
        return r

    @property
    def array(self) -> np.ndarray:
        if self._full is None:
            full = np.empty((self.n, self.n), dtype=np.uint16)
            for start in range(0, self.n, self.CHUNK):
                idx = list(range(start, min(self.n, start + self.CHUNK)))
                full[start : idx[-1] + 1] = self._compute(idx)
            full.setflags(write=False)
            self._full = full
            self._rows.clear()
        return self._full

    def __call__(self, u: int, v: int) -> int:
        return int(self.row(u)[v])

    dist = __call__

    def set_distance(self, u: int, vertices: Iterable[int]) -> int:
        """Distance from ``u`` to the nearest member of ``vertices``."""
        r = self.row(u)
        return int(min((r[x] for x in vertices), default=UNREACHABLE))

    def eccentricity(self, v: int) -> int:
        return int(self.row(v).max())

    def diameter(self) -> int:
        return int(self.array.max())

    def center(self) -> int:
        """Vertex of minimum eccentricity, smallest id on ties."""
        ecc = self.array.max(axis=1)
        return int(np.argmin(ecc))


def distance_matrix(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(g)


def ball_and_sphere(g: Graph, dm: DistanceMatrix, v: int, r: int) -> tuple[frozenset, frozenset]:
    _check_vertex(g, v)
    row = dm.row(v).astype(np.int64)
    ball = frozenset(np.flatnonzero(row <= r).tolist())
    sphere = frozenset(np.flatnonzero(row == r).tolist())
    return ball, sphere


def ball(g: Graph, dm: DistanceMatrix, v: int, r: int) -> list[int]:
    """Sorted list of vertices within distance ``r`` of ``v``."""
    return np.flatnonzero(dm.row(v).astype(np.int64) <= r).tolist()


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``keep``; returns it with the new-id -> old-id map."""
    old_ids = tuple(sorted(set(keep)))
    if not old_ids:
        raise EmptyGraph("induced subgraph on no vertices")
    new_of = {old: new for new, old in enumerate(old_ids)}
    adj = tuple(tuple(new_of[w] for w in g.neighbors(old) if w in new_of) for old in old_ids)
    anns: dict[str, Annotation] = {}
    for name, value in g.annotations.items():
        if isinstance(value, Mapping):
            anns[name] = {new_of[k]: val for k, val in value.items() if k in new_of}
        else:
            anns[name] = frozenset(new_of[x] for x in value if x in new_of)
    return Graph(adj, anns), old_ids


def remove_vertices(g: Graph, k: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    removed = frozenset(k)
    for x in removed:
        _check_vertex(g, x)
    if len(removed) >= g.n:
        raise EmptyGraph("removing every vertex leaves an empty graph")
    return induced_subgraph(g, (x for x in range(g.n) if x not in removed))


def connected_components(g: Graph) -> list[frozenset]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def boundary_edges(g: Graph, k: Iterable[int]) -> tuple[int, list[tuple[int, int]]]:
    inside = frozenset(k)
    if not inside or len(inside) >= g.n:
        raise InvalidInput("boundary needs a non-empty proper vertex subset")
    for x in inside:
        _check_vertex(g, x)
    edges = sorted((min(u, w), max(u, w)) for u in inside for w in g.neighbors(u) if w not in inside)
    return len(edges), edges


def geodesic(g: Graph, dm: DistanceMatrix, u: int, v: int) -> list[int]:
    """Shortest path from ``u`` to ``v``; each step takes the smallest-id
    neighbour that gets strictly closer to ``v``."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    to_v = dm.row(v)
    if to_v[u] == UNREACHABLE:
        raise NoPath(f"no path between {u} and {v}")
    path = [u]
    cur = u
    while cur != v:
        d = to_v[cur]
        cur = next(w for w in g.neighbors(cur) if to_v[w] < d)
        path.append(cur)
    return path


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``x`` renamed ``perm[x]``."""
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    anns: dict[str, Annotation] = {}
    for name, value in g.annotations.items():
        if isinstance(value, Mapping):
            anns[name] = {perm[k]: val for k, val in value.items()}
        else:
            anns[name] = frozenset(perm[x] for x in value)
    return build_graph(g.n, edges, anns)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidInput(f"vertex {v} is not in [0,{g.n})")
