"""Theta-type constructions: the n-fold bridged extension and the subdivided K_n x K_2."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from copnum.errors import InvalidInput
from copnum.graph import DistanceMatrix, Graph, build_graph, induced_subgraph, is_connected


@dataclass(frozen=True)
class ThetaExtensionAnnotations:
    """Bookkeeping for ``theta_extension``.

    ``copies[k][x]`` is the image of base vertex ``x`` in copy ``k`` (0-based);
    ``bridges[(i, j, x)]`` is the vertex path from ``copies[i][x]`` to
    ``copies[j][x]``; ``shadow[v]`` is the base vertex under ``v``.
    """

    base: Graph
    center: int
    n: int
    copies: tuple[tuple[int, ...], ...]
    bridges: dict[tuple[int, int, int], tuple[int, ...]] = field(repr=False)
    shadow: tuple[int, ...] = field(repr=False)
    bridge_of: dict[int, tuple[int, int, int]] = field(repr=False)

    def copy_index(self, v: int) -> int | None:
        """Copy containing ``v``, or None for inner bridge vertices."""
        k, x = divmod(v, self.base.n)
        return k if k < self.n else None


def theta_extension(base: Graph, u0: int, n: int) -> tuple[Graph, ThetaExtensionAnnotations]:
    if n < 2:
        raise InvalidInput("theta_extension needs n >= 2 copies")
    if not 0 <= u0 < base.n:
        raise InvalidInput(f"center {u0} is not a base vertex")
    if not is_connected(base):
        raise InvalidInput("theta_extension needs a connected base graph")
    nb = base.n
    dist = DistanceMatrix(base).row(u0)
    copies = tuple(tuple(k * nb + x for x in range(nb)) for k in range(n))
    edges = [(k * nb + x, k * nb + y) for k in range(n) for x, y in base.edges]
    shadow = [x for _ in range(n) for x in range(nb)]
    bridges: dict[tuple[int, int, int], tuple[int, ...]] = {}
    bridge_of: dict[int, tuple[int, int, int]] = {}
    nxt = n * nb
    for i, j in combinations(range(n), 2):
        for x in range(nb):
            inner = list(range(nxt, nxt + int(dist[x])))
            nxt += len(inner)
            chain = (copies[i][x], *inner, copies[j][x])
            edges += list(zip(chain, chain[1:]))
            bridges[(i, j, x)] = chain
            for v in inner:
                shadow.append(x)
                bridge_of[v] = (i, j, x)
    annotations = {
        "shadow": dict(enumerate(shadow)),
        "copy": {v: k for k in range(n) for v in copies[k]},
        "center": {copies[k][u0] for k in range(n)},
    }
    g = build_graph(nxt, edges, annotations)
    ann = ThetaExtensionAnnotations(base, u0, n, copies, bridges, tuple(shadow), bridge_of)
    return g, ann


def recover_theta_extension(g: Graph) -> ThetaExtensionAnnotations:
    """Rebuild the bookkeeping of a graph produced by ``theta_extension``."""
    try:
        copy = g.annotations["copy"]
        shadow = g.annotations["shadow"]
        centers = g.annotations["center"]
    except KeyError as exc:
        raise InvalidInput(f"graph lacks theta-extension annotation {exc}") from exc
    n = max(copy.values()) + 1
    first = sorted(v for v, k in copy.items() if k == 0)
    base, _ = induced_subgraph(g, first)
    base = Graph(base.adjacency)
    u0 = shadow[min(centers)]
    rebuilt, ann = theta_extension(base, u0, n)
    if not rebuilt.same_structure(g):
        raise InvalidInput("graph annotations do not describe a theta extension")
    return ann


@dataclass(frozen=True)
class ThetaNMAnnotations:
    """Corners and bridges of ``theta_nm``.

    ``corners[(i, level)]`` with copy ``i`` in ``0..n-1`` and level 1 or 2;
    ``bridges[(level, i, j)]`` for ``i < j`` runs from corner ``(i, level)`` to
    corner ``(j, level)``.
    """

    n: int
    m: int
    corners: dict[tuple[int, int], int]
    bridges: dict[tuple[int, int, int], tuple[int, ...]] = field(repr=False)

    def sibling_pairs(self) -> list[tuple[int, int]]:
        return [(self.corners[(i, 1)], self.corners[(i, 2)]) for i in range(self.n)]

    def bridge_path(self, level: int, i: int, j: int) -> tuple[int, ...]:
        """Bridge oriented from copy ``i`` to copy ``j``."""
        if i < j:
            return self.bridges[(level, i, j)]
        return tuple(reversed(self.bridges[(level, j, i)]))


def theta_nm(n: int, m: int) -> tuple[Graph, ThetaNMAnnotations]:
    """Subdivided K_n x K_2: level-1 edges become m edges, level-2 edges m+1.

    Corner ``(i, level)`` has id ``2*i + level - 1``.
    """
    if n < 1 or m < 1:
        raise InvalidInput("theta_nm needs n >= 1 and m >= 1")
    corners = {(i, lvl): 2 * i + lvl - 1 for i in range(n) for lvl in (1, 2)}
    edges = [(corners[(i, 1)], corners[(i, 2)]) for i in range(n)]
    bridges = {}
    nxt = 2 * n
    for i, j in combinations(range(n), 2):
        for lvl in (1, 2):
            length = m if lvl == 1 else m + 1
            inner = list(range(nxt, nxt + length - 1))
            nxt += len(inner)
            chain = (corners[(i, lvl)], *inner, corners[(j, lvl)])
            edges += list(zip(chain, chain[1:]))
            bridges[(lvl, i, j)] = chain
    annotations = {
        "corner": set(corners.values()),
        "level": {v: lvl for (i, lvl), v in corners.items()},
        "copy": {v: i for (i, lvl), v in corners.items()},
    }
    return build_graph(nxt, edges, annotations), ThetaNMAnnotations(n, m, corners, bridges)


def recover_theta_nm(g: Graph) -> ThetaNMAnnotations:
    """Rebuild the bookkeeping of a ``theta_nm`` graph from its corner tags."""
    if "corner" not in g.annotations:
        raise InvalidInput("graph lacks the 'corner' annotation of theta_nm")
    n = len(g.annotations["corner"]) // 2
    if n < 2:
        raise InvalidInput("cannot recover m from theta_nm with a single copy")
    m = DistanceMatrix(g).dist(0, 2)
    rebuilt, ann = theta_nm(n, m)
    if not rebuilt.same_structure(g):
        raise InvalidInput("graph annotations do not describe theta_nm")
    return ann
