"""Metric invariants: slim-triangle constant, expansion, growth, safe distance, distortion.

All ratios are exact ``Fraction`` values.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import numpy as np
from scipy.sparse.csgraph import shortest_path

from copnum.errors import (
    DisconnectedComplement,
    InsufficientPatch,
    InvalidInput,
    PartialResult,
    ResourceLimit,
)
from copnum.graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    connected_components,
    geodesic,
    induced_subgraph,
    is_connected,
)

SLIM_MAX_VERTICES = 400
SLIM_TRIPLE_BUDGET = 10**4
EXPANSION_CAP_BOUND = 12
EXPANSION_SET_BUDGET = 5 * 10**6
UNDISTORTION_MAX_VERTICES = 64


# -- slim triangles ---------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[int, int, int]
    sides: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]  # xy, xz, yz
    far_point: int  # side vertex farthest from the union of the other two sides


@dataclass(frozen=True)
class HyperbolicityReport:
    delta: int
    witness: Triangle | None


def _bfs_parents(g: Graph, row: np.ndarray) -> tuple[list[int], list[list[int]]]:
    order = sorted(range(g.n), key=lambda w: (int(row[w]), w))
    parents = [[x for x in g.neighbors(w) if row[x] + 1 == row[w]] for w in range(g.n)]
    return order, parents


def _far_geodesic_table(g: Graph, D: np.ndarray) -> np.ndarray:
    """``F[a, b, p]`` = max over geodesics Q from a to b of dist(p, Q).

    A bottleneck dynamic programme over the BFS DAG of each source: the best
    geodesic to ``w`` keeps the larger of its parents' values, capped by
    dist(p, w).
    """
    n = g.n
    F = np.empty((n, n, n), dtype=np.uint16)
    for a in range(n):
        order, parents = _bfs_parents(g, D[a])
        val = F[a]
        for w in order:
            if w == a:
                val[w] = D[:, a]
                continue
            ps = parents[w]
            best = val[ps[0]] if len(ps) == 1 else np.max(val[ps], axis=0)
            val[w] = np.minimum(D[:, w], best)
    return F


def _best_geodesic(g: Graph, D: np.ndarray, a: int, b: int, p: int) -> tuple[int, ...]:
    """A geodesic from a to b maximizing its distance to p (smallest ids on ties)."""
    order, parents = _bfs_parents(g, D[a])
    score = {a: int(D[p, a])}
    back: dict[int, int] = {}
    for w in order:
        if w == a or D[a, w] > D[a, b]:
            continue
        par = max(parents[w], key=lambda x: (score[x], -x))
        score[w] = min(int(D[p, w]), score[par])
        back[w] = par
    path = [b]
    while path[-1] != a:
        path.append(back[path[-1]])
    return tuple(reversed(path))


def _check_connected_dm(g: Graph, dm: DistanceMatrix | None) -> np.ndarray:
    if not is_connected(g):
        raise InvalidInput("slim triangle constant needs a connected graph")
    dm = dm or DistanceMatrix(g)
    return dm.array.astype(np.int32)


def slim_triangle_constant(
    g: Graph,
    dm: DistanceMatrix | None = None,
    method: str = "dag",
    budget: int = SLIM_TRIPLE_BUDGET,
    max_vertices: int = SLIM_MAX_VERTICES,
) -> HyperbolicityReport:
    """Least integer delta such that every geodesic triangle is delta-slim.

    Sides are measured at vertices.  ``method="dag"`` evaluates the maximum over
    all geodesic choices exactly without listing them; ``method="enumerate"``
    lists every combination of sides per triple and stops with
    :class:`PartialResult` once a triple exceeds ``budget`` combinations.
    """
    if method == "enumerate":
        return _slim_enumerate(g, dm, budget)
    if method != "dag":
        raise InvalidInput(f"unknown slim-constant method {method!r}")
    if g.n > max_vertices:
        raise ResourceLimit(f"slim constant limited to {max_vertices} vertices, graph has {g.n}", g.n, max_vertices)
    dm = dm or DistanceMatrix(g)
    D = _check_connected_dm(g, dm)
    F = _far_geodesic_table(g, D)
    best = (-1, None)
    for x in range(g.n):
        for y in range(x, g.n):
            on_xy = np.flatnonzero(D[x] + D[y] == D[x, y])
            m = np.minimum(F[x][:, on_xy], F[y][:, on_xy])  # rows z, cols p
            val = int(m.max())
            if val > best[0]:
                z, pi = np.unravel_index(int(np.argmax(m)), m.shape)
                best = (val, (x, y, int(z), int(on_xy[pi])))
    delta, (x, y, z, p) = best
    side_xy = tuple(geodesic(g, dm, x, p)) + tuple(geodesic(g, dm, p, y))[1:]
    witness = Triangle((x, y, z), (side_xy, _best_geodesic(g, D, x, z, p), _best_geodesic(g, D, y, z, p)), p)
    return HyperbolicityReport(delta, witness)


def all_geodesics(g: Graph, D: np.ndarray, a: int, b: int, limit: int) -> list[tuple[int, ...]] | None:
    """Every geodesic from a to b, or None if there are more than ``limit``."""
    out: list[tuple[int, ...]] = []

    def walk(path: list[int]) -> bool:
        cur = path[-1]
        if cur == b:
            out.append(tuple(path))
            return len(out) <= limit
        for w in g.neighbors(cur):
            if D[w, b] + 1 == D[cur, b]:
                path.append(w)
                if not walk(path):
                    return False
                path.pop()
        return True

    return out if walk([a]) else None


def triangle_slimness(D: np.ndarray, sides: tuple[tuple[int, ...], ...]) -> tuple[int, int, int]:
    """Largest distance from a side vertex to the union of the other two sides.

    Returns (value, side index, vertex).
    """
    best = (-1, 0, sides[0][0])
    for i, side in enumerate(sides):
        others = [v for j, s in enumerate(sides) if j != i for v in s]
        sub = D[np.ix_(list(side), others)].min(axis=1)
        k = int(np.argmax(sub))
        if int(sub[k]) > best[0]:
            best = (int(sub[k]), i, side[k])
    return best


def _slim_enumerate(g: Graph, dm: DistanceMatrix | None, budget: int) -> HyperbolicityReport:
    D = _check_connected_dm(g, dm)
    delta, witness = 0, None
    for x, y, z in combinations_with_replacement(range(g.n), 3):
        sides = []
        for a, b in ((x, y), (x, z), (y, z)):
            geos = all_geodesics(g, D, a, b, budget)
            if geos is None:
                raise PartialResult(f"triangle {(x, y, z)} exceeds the geodesic budget", delta)
            sides.append(geos)
        if len(sides[0]) * len(sides[1]) * len(sides[2]) > budget:
            raise PartialResult(f"triangle {(x, y, z)} exceeds the geodesic budget", delta)
        for combo in product(*sides):
            val, side, v = triangle_slimness(D, combo)
            if val > delta or witness is None:
                delta = max(delta, val)
                if val == delta:
                    witness = Triangle((x, y, z), combo, v)
    return HyperbolicityReport(delta, witness)


# -- expansion ---------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionReport:
    min_ratio: Fraction
    witness_set: frozenset
    size_cap: int


def connected_sets(g: Graph, size_cap: int) -> Iterator[tuple[int, ...]]:
    """Every connected vertex set of size <= size_cap exactly once (ESU order)."""

    def extend(sub: list[int], sub_set: set[int], border: set[int], ext: list[int], root: int):
        yield tuple(sub)
        if len(sub) == size_cap:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [u for u in g.neighbors(w) if u > root and u not in sub_set and u not in border]
            sub.append(w)
            sub_set.add(w)
            new_border = border | set(g.neighbors(w))
            yield from extend(sub, sub_set, new_border, ext + fresh, root)
            sub.pop()
            sub_set.discard(w)

    for v in range(g.n):
        start = [u for u in g.neighbors(v) if u > v]
        yield from extend([v], {v}, set(g.neighbors(v)) | {v}, start, v)


def boundary_size(g: Graph, k: frozenset | set) -> int:
    return sum(1 for u in k for w in g.neighbors(u) if w not in k)


def expansion_profile(
    g: Graph, size_cap: int, bound: int = EXPANSION_CAP_BOUND, budget: int = EXPANSION_SET_BUDGET
) -> ExpansionReport:
    """Exact minimum of |boundary(K)|/|K| over non-empty K with |K| <= size_cap.

    Only connected K are enumerated: a disconnected set's ratio is a mediant of
    its components' ratios, so it never beats the best component.
    """
    if size_cap < 1:
        raise InvalidInput("size_cap must be >= 1")
    if size_cap > bound:
        raise ResourceLimit(f"size_cap {size_cap} exceeds the brute-force bound {bound}", size_cap, bound)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for count, k in enumerate(connected_sets(g, size_cap)):
        if count >= budget:
            raise ResourceLimit(f"more than {budget} candidate sets", count, budget)
        ratio = Fraction(boundary_size(g, set(k)), len(k))
        key = (ratio, len(k), tuple(sorted(k)))
        if best is None or key < best:
            best = key
    return ExpansionReport(best[0], frozenset(best[2]), size_cap)


# -- growth and safe distance -------------------------------------------------


@dataclass(frozen=True)
class GrowthProfile:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    valid_radius: int


def growth_profile(
    g: Graph, v: int, r_max: int, interior: frozenset | None = None, dm: DistanceMatrix | None = None
) -> GrowthProfile:
    """Sphere and ball sizes around ``v``.

    Radii up to ``valid_radius`` (distance to the nearest non-interior vertex
    minus one) are unaffected by the patch boundary.  Without interior tags the
    graph is taken as-is and every radius is valid.
    """
    if interior is None:
        interior = g.annotations.get("interior", frozenset(range(g.n)))
    if v not in interior:
        raise InvalidInput(f"vertex {v} is not interior")
    if r_max < 0:
        raise InvalidInput("r_max must be >= 0")
    row = (dm or DistanceMatrix(g)).row(v).astype(np.int64)
    reach = row[row != UNREACHABLE]
    counts = np.bincount(reach, minlength=r_max + 1)[: r_max + 1]
    alpha = tuple(int(c) for c in counts)
    beta = tuple(int(c) for c in np.cumsum(counts))
    outside = [row[u] for u in range(g.n) if u not in interior and row[u] != UNREACHABLE]
    valid = int(min(outside)) - 1 if outside else max(r_max, int(reach.max()))
    return GrowthProfile(alpha, beta, valid)


def safe_distance_lambda(growth: GrowthProfile, h_lower_bound: Fraction | int, d: int, rho: int, n: int) -> int:
    """Least N with beta(N) > alpha(rho) * d * n / h."""
    h = Fraction(h_lower_bound)
    if h <= 0:
        raise InvalidInput("the Cheeger lower bound must be positive")
    usable = min(growth.valid_radius, len(growth.beta) - 1)
    if rho > usable:
        raise InsufficientPatch(f"alpha({rho}) lies beyond the valid radius {usable}")
    scaled = growth.alpha[rho] * d * n
    for radius in range(usable + 1):
        if growth.beta[radius] * h > scaled:
            return radius
    raise InsufficientPatch(f"ball sizes up to radius {usable} never exceed {Fraction(scaled) / h}")


# -- distortion --------------------------------------------------------------


@dataclass(frozen=True)
class DistortionReport:
    max_ratio: Fraction
    witness: tuple[int, int] | None
    components: int


def _complement_distances(g: Graph, removed: frozenset) -> tuple[np.ndarray, np.ndarray]:
    keep = np.array([v for v in range(g.n) if v not in removed], dtype=np.int64)
    if keep.size == 0:
        raise DisconnectedComplement("removing every vertex leaves nothing")
    sub = g.csr[keep][:, keep]
    d = shortest_path(sub, directed=False, unweighted=True)
    if not np.isfinite(d).all():
        raise DisconnectedComplement(f"removing {sorted(removed)} disconnects the graph")
    return keep, d.astype(np.int64)


def distortion(g: Graph, delta_set, dm: DistanceMatrix | None = None) -> DistortionReport:
    """Exact max of dist_{G-delta}(a,b) / dist_G(a,b) over pairs outside delta."""
    removed = frozenset(delta_set)
    dm = dm or DistanceMatrix(g)
    keep, dh = _complement_distances(g, removed)
    comps = len(connected_components(induced_subgraph(g, removed)[0])) if removed else 0
    if keep.size < 2:
        return DistortionReport(Fraction(1), None, comps)
    dg = dm.array[np.ix_(keep, keep)].astype(np.int64)
    iu = np.triu_indices(keep.size, 1)
    num, den = dh[iu], dg[iu]
    # Quotients of integers below 2**16 that differ do so by more than float64
    # rounding can hide, and equal quotients round identically, so the float
    # maximum and its ties are exact.
    q = num / den
    first = int(np.flatnonzero(q == q.max())[0])
    best_num, best_den = int(num[first]), int(den[first])
    a, b = int(keep[iu[0][first]]), int(keep[iu[1][first]])
    return DistortionReport(Fraction(best_num, best_den), (a, b), comps)


def conforming_sets(g: Graph, m: int, n: int) -> Iterator[tuple[frozenset, list[frozenset]]]:
    """Non-empty vertex sets of size <= m with <= n components and connected complement.

    Yields the set with its components (ordered by smallest vertex).
    """
    for size in range(1, min(m, g.n - 1) + 1):
        for combo in combinations(range(g.n), size):
            s = frozenset(combo)
            sub, ids = induced_subgraph(g, combo)
            comps = [frozenset(ids[x] for x in c) for c in connected_components(sub)]
            if len(comps) > n:
                continue
            rest, _ = induced_subgraph(g, (v for v in range(g.n) if v not in s))
            if not is_connected(rest):
                continue
            yield s, comps


def boundary_detour(g: Graph, removed: frozenset) -> int:
    """Max of dist_{G-removed}(a, b) over a, b adjacent to ``removed``."""
    keep, dh = _complement_distances(g, removed)
    pos = {int(v): i for i, v in enumerate(keep)}
    touching = sorted({pos[w] for u in removed for w in g.neighbors(u) if w not in removed})
    if not touching:
        return 0
    return int(dh[np.ix_(touching, touching)].max())


def _rips_connected(dm: DistanceMatrix, comps: list[frozenset], threshold: int) -> bool:
    k = len(comps)
    if k == 1:
        return True
    D = dm.array
    adj = [[j for j in range(k) if j != i and 0 < D[np.ix_(sorted(comps[i]), sorted(comps[j]))].min() <= threshold] for i in range(k)]
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == k


def undistortion_constant_bruteforce(
    g: Graph,
    m: int,
    n: int,
    max_vertices: int = UNDISTORTION_MAX_VERTICES,
    max_m: int = 5,
    max_n: int = 3,
    rips: bool = True,
) -> int:
    """Brute-force L_{m,n}: the largest detour between two neighbours of a deleted set.

    Sets with ``k`` components count only when their Rips graph at threshold
    L_{m,k-1} is connected (``rips=False`` drops that clause).  The value is
    relative to this finite graph.
    """
    if m < 0 or n < 0:
        raise InvalidInput("m and n must be non-negative")
    if g.n > max_vertices or m > max_m or n > max_n:
        raise ResourceLimit(f"brute force limited to {max_vertices} vertices, m<={max_m}, n<={max_n}")
    if m == 0 or n == 0:
        return 0
    dm = DistanceMatrix(g)
    by_k: dict[int, list[tuple[frozenset, list[frozenset]]]] = {}
    for s, comps in conforming_sets(g, m, n):
        by_k.setdefault(len(comps), []).append((s, comps))
    level = 0
    for k in range(1, n + 1):
        value = level
        for s, comps in by_k.get(k, []):
            if rips and not _rips_connected(dm, comps, level):
                continue
            value = max(value, boundary_detour(g, s))
        level = value
    return level
