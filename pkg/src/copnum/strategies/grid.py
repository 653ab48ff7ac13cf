"""Robber on a square-grid patch that hops between cop-free squares.

``n + 2`` squares of side ``2s`` with ``s = n + n*rho + rho + sigma`` sit in a
row centered on ``u0``.  The robber waits at the center of a cop-free square;
when a cop enters it he shifts vertically by ``i``, runs horizontally to the
center of the nearest cop-free square and shifts back.  Squares are closed:
a cop on a shared side occupies both neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass

from copnum.errors import InvalidInput, StrategyFault
from copnum.game import Game, Strategy


@dataclass(frozen=True)
class GridGeometry:
    width: int
    height: int
    half: int  # s: half the side of a square
    count: int  # number of squares
    x0: int  # left side of the first square
    y_mid: int

    def vid(self, x: int, y: int) -> int:
        return y * self.width + x

    def xy(self, v: int) -> tuple[int, int]:
        return v % self.width, v // self.width

    def center(self, j: int) -> int:
        return self.vid(self.x0 + (2 * j + 1) * self.half, self.y_mid)

    def squares_of(self, v: int) -> list[int]:
        """Indices of the closed squares containing ``v``."""
        x, y = self.xy(v)
        if abs(y - self.y_mid) > self.half:
            return []
        s2 = 2 * self.half
        return [j for j in range(self.count) if self.x0 + j * s2 <= x <= self.x0 + (j + 1) * s2]


def grid_radius(n: int, sigma: int, rho: int) -> int:
    """R = 2(n + n*rho + rho + sigma)(n + 3)."""
    return 2 * (n + n * rho + rho + sigma) * (n + 3)


def grid_geometry(game: Game) -> GridGeometry:
    g, p = game.graph, game.params
    try:
        xs, ys = g.annotations["x"], g.annotations["y"]
    except KeyError:
        raise InvalidInput("grid robber needs a grid_patch graph with x/y annotations") from None
    w, h = max(xs.values()) + 1, max(ys.values()) + 1
    if w * h != g.n or any(xs[v] != v % w or ys[v] != v // w for v in range(g.n)):
        raise InvalidInput("graph is not a full rectangular grid patch")
    s = p.n + p.n * p.rho + p.rho + p.sigma
    ux, uy = p.v % w, p.v // w
    geo = GridGeometry(w, h, s, p.n + 2, ux - (p.n + 2) * s, uy)
    return geo


class GridRobber(Strategy):
    side = "robber"

    def __init__(self, game: Game):
        p = game.params
        self.geo = grid_geometry(game)
        R = p.R
        if p.psi < 2 * R:
            raise InvalidInput(f"grid robber needs psi >= 2R = {2 * R}, got psi={p.psi}")
        if R < grid_radius(p.n, p.sigma, p.rho):
            raise InvalidInput(f"grid robber needs R >= {grid_radius(p.n, p.sigma, p.rho)}, got R={R}")
        ux, uy = self.geo.xy(p.v)
        if ux - R < 0 or uy - R < 0 or ux + R >= self.geo.width or uy + R >= self.geo.height:
            raise InvalidInput(f"the patch does not contain the ball of radius {R} around {p.v}")
        self.shift_limit = p.n + p.n * p.rho

    def start(self, game, seed):
        self.relocations = 0

    def cop_free(self, cops) -> list[bool]:
        free = [True] * self.geo.count
        for c in cops:
            for j in self.geo.squares_of(c):
                free[j] = False
        return free

    def _nearest_free(self, cops, origin: int, stage: int) -> int:
        free = self.cop_free(cops)
        options = [j for j in range(self.geo.count) if free[j]]
        if not options:
            raise StrategyFault("every square holds a cop", "robber", stage)
        return min(options, key=lambda j: (abs(j - origin), j))

    def place(self, game, state):
        middle = (self.geo.count - 1) // 2
        return self.geo.center(self._nearest_free(state.cops, middle, 0))

    def shifts(self):
        """0, 1, -1, 2, -2, ... within -(n + n*rho) < i <= n + n*rho."""
        yield 0
        for k in range(1, self.shift_limit + 1):
            yield k
            if k < self.shift_limit:
                yield -k

    def path_for(self, r: int, target: int, i: int) -> list[int]:
        geo = self.geo
        (x, y), (tx, _) = geo.xy(r), geo.xy(target)
        step = 1 if i >= 0 else -1
        path = [geo.vid(x, y + k) for k in range(0, i + step, step)] if i else [r]
        hstep = 1 if tx >= x else -1
        path += [geo.vid(xx, y + i) for xx in range(x + hstep, tx + hstep, hstep)] if tx != x else []
        path += [geo.vid(tx, y + k) for k in range(i - step, -step, -step)] if i else []
        return path

    def move(self, game, history):
        last = history[-1]
        here = self.geo.squares_of(last.robber)
        free = self.cop_free(last.cops)
        if any(free[j] for j in here):
            return last.robber
        j = self._nearest_free(last.cops, here[0] if here else 0, last.stage)
        target = self.geo.center(j)
        for i in self.shifts():
            path = self.path_for(last.robber, target, i)
            if game.robber_path_ok(last.cops, path):
                self.relocations += 1
                return target
        raise StrategyFault(f"no translated path reaches square {j} out of reach", "robber", last.stage)
