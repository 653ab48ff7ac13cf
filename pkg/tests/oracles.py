"""Independent reference implementations used only by the tests.

They share no code with the package beyond the Graph container: distances
come from networkx or plain BFS, and the game solvers are written as
textbook fixed points over Python sets.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations, product

import networkx as nx


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_distances(g) -> dict[int, dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(to_nx(g)))


def bfs_dist(g, s: int) -> dict[int, int]:
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def robber_reach(g, dist, cops, r, rho, psi) -> set[int]:
    """Vertices reachable in <= psi steps through vertices > rho from every cop."""
    safe = {u for u in range(g.n) if all(dist[c].get(u, 10**9) > rho for c in cops)}
    if r not in safe:
        return set()
    seen = {r}
    frontier = {r}
    for _ in range(psi):
        frontier = {w for u in frontier for w in g.neighbors(u) if w in safe and w not in seen}
        seen |= frontier
    return seen


def classical_copwin(g, k: int) -> bool:
    """Classical cops and robbers (speed 1, capture by landing on the robber).

    Backward induction on (cops, robber, whose turn) positions.
    """
    V = range(g.n)
    closed = {u: {u, *g.neighbors(u)} for u in V}
    cop_pos = list(product(V, repeat=k))
    won = set()  # positions (cops, r, turn) from which the cops force capture
    for cs in cop_pos:
        for r in V:
            if r in cs:
                won.add((cs, r, "c"))
                won.add((cs, r, "r"))
    changed = True
    while changed:
        changed = False
        for cs in cop_pos:
            for r in V:
                if (cs, r, "c") not in won:
                    moves = product(*(closed[c] for c in cs))
                    if any((m, r, "r") in won for m in moves):
                        won.add((cs, r, "c"))
                        changed = True
                if (cs, r, "r") not in won:
                    options = [x for x in closed[r] if x not in cs]
                    if all((cs, x, "c") in won for x in options):
                        won.add((cs, r, "r"))
                        changed = True
    return any(all((cs, r, "c") in won for r in V if r not in cs) for cs in cop_pos)


def naive_copwin(g, n, sigma, rho, psi, v, R) -> bool:
    """Cop win via the nested Buchi fixed point nu Z. mu Y. Pre(Y) | (T & Pre(Z)).

    Nodes: ("c", cops, r) with the cops to move and ("r", cops, r) with the
    robber to move; capture is a losing sink for the robber and is not a node.
    """
    dist = {u: bfs_dist(g, u) for u in range(g.n)}
    V = range(g.n)
    configs = list(product(V, repeat=n))
    ball = {c: [u for u in V if dist[c][u] <= sigma] for c in V}

    def safe(cs, r):
        return all(dist[c][r] > rho for c in cs)

    succ: dict = {}
    for cs in configs:
        for r in V:
            out = []
            capture = False
            for nxt in product(*(ball[c] for c in cs)):
                if safe(nxt, r):
                    out.append(("r", nxt, r))
                else:
                    capture = True
            succ[("c", cs, r)] = (out, capture)
            if safe(cs, r):
                succ[("r", cs, r)] = ([("c", cs, x) for x in robber_reach(g, dist, cs, r, rho, psi)], False)
    nodes = set(succ)
    target = {x for x in nodes if x[0] == "c" and dist[v][x[2]] <= R}

    def pre(X):
        out = set()
        for x in nodes:
            s, capture = succ[x]
            if x[0] == "c":
                if not capture and all(y in X for y in s):
                    out.add(x)
            elif any(y in X for y in s):
                out.add(x)
        return out

    Z = set(nodes)
    while True:
        good = target & pre(Z)
        Y: set = set()
        while True:
            nY = pre(Y) | good
            if nY == Y:
                break
            Y = nY
        if Y == Z:
            break
        Z = Y
    robber = Z
    return any(all(("c", cs, r) not in robber for r in V) for cs in configs)


def slim_constant(g) -> int:
    """Max over all triples and all geodesic choices of the thinness of a side."""
    h = to_nx(g)
    dist = nx_distances(g)
    geo = {}
    for a in range(g.n):
        for b in range(g.n):
            geo[a, b] = [tuple(p) for p in nx.all_shortest_paths(h, a, b)]
    worst = 0
    for x in range(g.n):
        for y in range(g.n):
            for z in range(g.n):
                for s1 in geo[x, y]:
                    for s2 in geo[x, z]:
                        for s3 in geo[y, z]:
                            sides = (s1, s2, s3)
                            for i, side in enumerate(sides):
                                others = set(sides[(i + 1) % 3]) | set(sides[(i + 2) % 3])
                                for p in side:
                                    worst = max(worst, min(dist[p][o] for o in others))
    return worst


def min_expansion(g, cap: int):
    """Minimum of |boundary K| / |K| over all non-empty K with |K| <= cap."""
    best = None
    for size in range(1, min(cap, g.n) + 1):
        for k in combinations(range(g.n), size):
            ks = set(k)
            edges = sum(1 for u in ks for w in g.neighbors(u) if w not in ks)
            r = Fraction(edges, size)
            best = r if best is None or r < best else best
    return best
