"""Small named graphs and finite patches of infinite families."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from copnum.errors import InvalidInput
from copnum.graph import Graph, build_graph


def path(k: int) -> Graph:
    if k < 1:
        raise InvalidInput("path needs k >= 1")
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise InvalidInput("cycle needs k >= 3")
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Graph:
    if k < 1:
        raise InvalidInput("complete graph needs k >= 1")
    return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def regular_tree(d: int, depth: int) -> Graph:
    """Ball of radius ``depth`` around the root of the d-regular tree (BFS ids)."""
    if d < 2 or depth < 0:
        raise InvalidInput("regular_tree needs d >= 2 and depth >= 0")
    edges = []
    level = [0]
    count = 1
    interior = set()
    for r in range(depth):
        nxt = []
        for v in level:
            interior.add(v)
            for _ in range(d if v == 0 else d - 1):
                edges.append((v, count))
                nxt.append(count)
                count += 1
        level = nxt
    if depth == 0:
        interior = set()
    return build_graph(count, edges, {"interior": interior})


def grid_patch(w: int, h: int) -> Graph:
    """w-by-h piece of the square grid; vertex (x, y) has id ``y*w + x``."""
    if w < 1 or h < 1:
        raise InvalidInput("grid_patch needs w, h >= 1")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    interior = {y * w + x for y in range(1, h - 1) for x in range(1, w - 1)}
    coords_x = {y * w + x: x for y in range(h) for x in range(w)}
    coords_y = {y * w + x: y for y in range(h) for x in range(w)}
    return build_graph(w * h, edges, {"interior": interior, "x": coords_x, "y": coords_y})


def torus_grid(w: int, h: int) -> Graph:
    if w < 3 or h < 3:
        raise InvalidInput("torus_grid needs w, h >= 3 to stay simple")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            edges.append((v, y * w + (x + 1) % w))
            edges.append((v, ((y + 1) % h) * w + x))
    return build_graph(w * h, edges, {"interior": set(range(w * h))})


def farey_ball(max_denominator: int) -> Graph:
    """Farey graph on 1/0 and the reduced fractions a/b in [-1, 1] with b <= max_denominator.

    Vertex 0 is 1/0; the rest are sorted by value.  Edge iff |ad - bc| = 1.
    The Farey graph has infinite degree, so no vertex is tagged interior.
    """
    if max_denominator < 1:
        raise InvalidInput("farey_ball needs max_denominator >= 1")
    fracs = sorted(
        {Fraction(a, b) for b in range(1, max_denominator + 1) for a in range(-b, b + 1) if gcd(a, b) == 1}
    )
    pairs = [(1, 0)] + [(f.numerator, f.denominator) for f in fracs]
    edges = []
    for i, (a, b) in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            c, d = pairs[j]
            if abs(a * d - b * c) == 1:
                edges.append((i, j))
    return build_graph(
        len(pairs),
        edges,
        {
            "numerator": {i: a for i, (a, _) in enumerate(pairs)},
            "denominator": {i: b for i, (_, b) in enumerate(pairs)},
            "interior": set(),
        },
    )


def gamma2_patch(depth: int) -> Graph:
    """Two rays from a common vertex 0 whose k-th vertices are joined by a path of length k.

    Ids: 0, then ray a_1..a_depth, ray b_1..b_depth, then the inner vertices of
    the joining paths ordered by (k, position).
    """
    if depth < 1:
        raise InvalidInput("gamma2_patch needs depth >= 1")
    a = list(range(1, depth + 1))
    b = list(range(depth + 1, 2 * depth + 1))
    edges = [(0, a[0]), (0, b[0])]
    edges += [(a[i], a[i + 1]) for i in range(depth - 1)]
    edges += [(b[i], b[i + 1]) for i in range(depth - 1)]
    nxt = 2 * depth + 1
    for k in range(1, depth + 1):
        chain = [a[k - 1]] + list(range(nxt, nxt + k - 1)) + [b[k - 1]]
        nxt += k - 1
        edges += list(zip(chain, chain[1:]))
    interior = set(range(nxt)) - {a[-1], b[-1]}
    return build_graph(nxt, edges, {"interior": interior})


def triangle_ladder(ray_length: int) -> Graph:
    """Truncation of the two-ray graph with a triangle and a pendant vertex.

    Vertex 0 (``a``) and its pendant 1 (``b``); vertices ``2..ray_length+1`` and
    ``ray_length+2..2*ray_length+1`` form two rays whose first vertices are
    adjacent to each other and to ``a``.
    """
    if ray_length < 1:
        raise InvalidInput("triangle_ladder needs ray_length >= 1")
    p = list(range(2, 2 + ray_length))
    q = list(range(2 + ray_length, 2 + 2 * ray_length))
    edges = [(0, 1), (0, p[0]), (0, q[0]), (p[0], q[0])]
    edges += list(zip(p, p[1:])) + list(zip(q, q[1:]))
    return build_graph(2 + 2 * ray_length, edges, {"a": {0}, "b": {1}})


def random_tree(n: int, rng: random.Random) -> Graph:
    if n < 1:
        raise InvalidInput("random_tree needs n >= 1")
    return build_graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def random_connected_graph(n: int, extra_edges: int, rng: random.Random) -> Graph:
    """Random spanning tree plus ``extra_edges`` random chords (duplicates collapse)."""
    edges = [(v, rng.randrange(v)) for v in range(1, n)]
    if n >= 2:
        for _ in range(extra_edges):
            u, v = rng.sample(range(n), 2)
            edges.append((u, v))
    return build_graph(n, edges)
