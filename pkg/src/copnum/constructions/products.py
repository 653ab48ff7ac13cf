"""Graph products, wedge sums and Rips graphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from copnum.errors import InvalidInput
from copnum.graph import DistanceMatrix, Graph, build_graph

PRODUCT_KINDS = ("cartesian", "strong", "lexicographic", "rooted")


@dataclass(frozen=True)
class ProductResult:
    """A product graph with the first-factor inclusion and projection.

    Vertex ``(u, v)`` has id ``u * |V(b)| + v``.
    """

    graph: Graph
    inclusion: tuple[int, ...]
    projection: tuple[int, ...]
    kind: str

    def pair(self, x: int, nb: int) -> tuple[int, int]:
        return divmod(x, nb)


def product(a: Graph, b: Graph, kind: str, root: int | None = None, base_vertex: int = 0) -> ProductResult:
    if kind not in PRODUCT_KINDS:
        raise InvalidInput(f"unknown product kind {kind!r}; expected one of {PRODUCT_KINDS}")
    if kind == "rooted":
        if root is None:
            raise InvalidInput("the rooted product needs a root vertex of the second factor")
        if not 0 <= root < b.n:
            raise InvalidInput(f"root {root} is not a vertex of the second factor")
        base_vertex = root
    if not 0 <= base_vertex < b.n:
        raise InvalidInput(f"vertex {base_vertex} is not a vertex of the second factor")
    na, nb = a.n, b.n

    def vid(u: int, v: int) -> int:
        return u * nb + v

    edges: list[tuple[int, int]] = []
    if kind == "cartesian":
        for u, u2 in a.edges:
            edges += [(vid(u, v), vid(u2, v)) for v in range(nb)]
        for v, v2 in b.edges:
            edges += [(vid(u, v), vid(u, v2)) for u in range(na)]
    elif kind == "strong":
        for u, u2 in a.edges:
            edges += [(vid(u, v), vid(u2, v)) for v in range(nb)]
            for v, v2 in b.edges:
                edges += [(vid(u, v), vid(u2, v2)), (vid(u, v2), vid(u2, v))]
        for v, v2 in b.edges:
            edges += [(vid(u, v), vid(u, v2)) for u in range(na)]
    elif kind == "lexicographic":
        for u, u2 in a.edges:
            edges += [(vid(u, v), vid(u2, v2)) for v in range(nb) for v2 in range(nb)]
        for v, v2 in b.edges:
            edges += [(vid(u, v), vid(u, v2)) for u in range(na)]
    else:
        for u, u2 in a.edges:
            edges.append((vid(u, root), vid(u2, root)))
        for v, v2 in b.edges:
            edges += [(vid(u, v), vid(u, v2)) for u in range(na)]
    g = build_graph(na * nb, edges)
    inclusion = tuple(vid(u, base_vertex) for u in range(na))
    projection = tuple(x // nb for x in range(na * nb))
    return ProductResult(g, inclusion, projection, kind)


def wedge_sum(a: Graph, u: int, b: Graph, v: int) -> tuple[Graph, tuple[int, ...]]:
    """Identify ``u`` in ``a`` with ``v`` in ``b``.

    Vertices of ``a`` keep their ids; the remaining vertices of ``b`` follow in
    order.  Returns the graph and the id map for ``b``'s vertices.
    """
    if not 0 <= u < a.n or not 0 <= v < b.n:
        raise InvalidInput("wedge vertices must belong to their graphs")
    b_map = []
    nxt = a.n
    for x in range(b.n):
        if x == v:
            b_map.append(u)
        else:
            b_map.append(nxt)
            nxt += 1
    edges = list(a.edges) + [(b_map[x], b_map[y]) for x, y in b.edges]
    return build_graph(nxt, edges), tuple(b_map)


def set_distance(dm: DistanceMatrix, s: frozenset, t: frozenset) -> int:
    rows = dm.array[np.ix_(sorted(s), sorted(t))]
    return int(rows.min())


def rips_graph(g: Graph, subgraphs: list[frozenset], threshold: int, dm: DistanceMatrix | None = None) -> Graph:
    """One vertex per set; an edge when the sets are at distance in (0, threshold]."""
    seen: set[int] = set()
    for s in subgraphs:
        if not s:
            raise InvalidInput("Rips graph pieces must be non-empty")
        if seen & s:
            raise InvalidInput("Rips graph pieces must be pairwise disjoint")
        seen |= s
    dm = dm or DistanceMatrix(g)
    edges = []
    for i in range(len(subgraphs)):
        for j in range(i + 1, len(subgraphs)):
            d = set_distance(dm, subgraphs[i], subgraphs[j])
            if 0 < d <= threshold:
                edges.append((i, j))
    return build_graph(len(subgraphs), edges)
