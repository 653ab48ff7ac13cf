"""Combinatorial patches of regular hyperbolic tilings.

A patch is grown ring by ring around a central face.  Each boundary vertex
knows how many faces it already has; the next ring adds the missing faces
around every boundary vertex.  Faces meeting the old boundary in a run of
vertices get ``q - len(run)`` new vertices, and the new edges leaving a
boundary vertex ("spokes") separate consecutive new faces around it.
"""

from __future__ import annotations

from dataclasses import dataclass

from copnum.errors import InvalidInput
from copnum.graph import Graph, build_graph


@dataclass
class _Patch:
    p: int
    q: int
    edges: list[tuple[int, int]]
    faces_at: list[int]
    boundary: list[int]
    face_count: int = 1

    def new_vertex(self, faces: int) -> int:
        self.faces_at.append(faces)
        return len(self.faces_at) - 1


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _grow(patch: _Patch) -> None:
    p, q = patch.p, patch.q
    bnd = patch.boundary
    missing = [p - patch.faces_at[v] for v in bnd]
    if min(missing) < 1:
        raise InvalidInput("tiling closed up; parameters are not hyperbolic")
    start = next((i for i, k in enumerate(missing) if k >= 2), None)
    if start is None:
        raise InvalidInput("no boundary vertex can carry a new edge")
    bnd = bnd[start:] + bnd[:start]
    missing = missing[start:] + missing[:start]
    # spoke t leaves boundary position owner[t]
    owner = [i for i, k in enumerate(missing) for _ in range(k - 1)]
    t_count = len(owner)
    runs = []
    for t in range(t_count):
        a, b = owner[t], owner[(t + 1) % t_count]
        if t + 1 < t_count:
            run = bnd[a : b + 1] if a != b else [bnd[a]]
        else:
            run = bnd[a:] + bnd[: b + 1]
        runs.append(run)
    sizes = [q - len(run) for run in runs]
    if min(sizes) < 1:
        raise InvalidInput("a new face would close without new vertices")
    # spoke endpoints merge across faces that need exactly one new vertex
    parent = list(range(t_count))
    for t, size in enumerate(sizes):
        if size == 1:
            ra, rb = _find(parent, t), _find(parent, (t + 1) % t_count)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    cls_faces: dict[int, set[int]] = {}
    for t in range(t_count):
        r = _find(parent, t)
        cls_faces.setdefault(r, set()).update({(t - 1) % t_count, t})
    vertex_of: dict[int, int] = {}
    for t in range(t_count):
        r = _find(parent, t)
        if r not in vertex_of:
            vertex_of[r] = patch.new_vertex(len(cls_faces[r]))
    endpoint = [vertex_of[_find(parent, t)] for t in range(t_count)]
    for t in range(t_count):
        patch.edges.append((bnd[owner[t]], endpoint[t]))
    new_boundary: list[int] = []
    for t in range(t_count):
        e0, e1 = endpoint[t], endpoint[(t + 1) % t_count]
        if not new_boundary or new_boundary[-1] != e0:
            new_boundary.append(e0)
        if sizes[t] >= 2:
            fresh = [patch.new_vertex(1) for _ in range(sizes[t] - 2)]
            chain = [e0, *fresh, e1]
            patch.edges += list(zip(chain, chain[1:]))
            new_boundary += fresh
    while len(new_boundary) > 1 and new_boundary[-1] == new_boundary[0]:
        new_boundary.pop()
    for v, k in zip(bnd, missing):
        patch.faces_at[v] += k
    patch.face_count += t_count
    patch.boundary = new_boundary


def hyperbolic_tiling_patch(p: int, q: int, layers: int) -> Graph:
    """Patch of the tiling with ``p`` faces at every vertex and ``q``-gon faces.

    ``layers=1`` is the central face alone; each further layer adds one ring
    of faces.  Vertices with all ``p`` faces present are tagged ``interior``
    (they have full degree ``p``).  (7, 3) gives the order-7 triangular tiling,
    (3, 7) the heptagonal tiling.
    """
    if layers < 1:
        raise InvalidInput("layers must be >= 1")
    if p < 3 or q < 3 or (p - 2) * (q - 2) <= 4:
        raise InvalidInput(f"({p},{q}) is not hyperbolic: need (p-2)(q-2) > 4")
    patch = _Patch(p, q, [(i, (i + 1) % q) for i in range(q)], [1] * q, list(range(q)))
    for _ in range(layers - 1):
        _grow(patch)
    n = len(patch.faces_at)
    interior = {v for v in range(n) if patch.faces_at[v] == p}
    g = build_graph(n, patch.edges, {"interior": interior})
    if g.edge_count != len(patch.edges):
        raise InvalidInput("tiling generator produced a repeated edge")
    if n - g.edge_count + patch.face_count != 1:
        raise InvalidInput("tiling generator produced a non-disk patch")
    return g
