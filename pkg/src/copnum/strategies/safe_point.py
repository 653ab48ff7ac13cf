"""Robber hopping between n + 1 well-separated safe points.

Points are pairwise more than ``2D + 2sigma`` apart, so ``n`` cops can come
within ``D + sigma`` of at most ``n`` of them.  The robber stays while his
point is farther than ``D + sigma`` from every cop; otherwise he runs to the
nearest such point through vertices out of the cops' reach.
"""

from __future__ import annotations

from collections import deque

from copnum.errors import InvalidInput, StrategyFault
from copnum.game import Game, Strategy


def select_safe_points(game: Game, interior, count: int, separation: int) -> list[int]:
    """Greedy farthest-point sampling over ``interior``, seeded by the center.

    The first point is the interior vertex farthest from the center; each
    next one maximizes the distance to those already chosen (smallest id on
    ties).  Every chosen pair is more than ``separation`` apart; raises
    InvalidInput when fewer than ``count`` such points exist.
    """
    dm = game.dm
    pool = sorted(interior)
    if not pool:
        raise InvalidInput("the patch has no interior vertices")
    points: list[int] = []
    anchors = [game.params.v]
    while len(points) < count:
        best, best_d = None, separation if points else -1
        for u in pool:
            d = min(dm(u, s) for s in anchors)
            if d > best_d:
                best, best_d = u, d
        if best is None:
            raise InvalidInput(
                f"only {len(points)} interior points are pairwise more than {separation} apart; need {count}"
            )
        points.append(best)
        anchors = points
    return points


class SafePointRobber(Strategy):
    side = "robber"

    def __init__(self, game: Game, D: int, count: int | None = None, interior=None):
        p = game.params
        if D <= p.rho:
            raise InvalidInput(f"safe distance D={D} must exceed rho={p.rho}")
        self.D = D
        self.count = count if count is not None else p.n + 1
        if self.count < p.n + 1:
            raise InvalidInput(f"need at least n+1={p.n + 1} safe points, got count={self.count}")
        if interior is None:
            interior = game.graph.annotations.get("interior", frozenset(range(game.graph.n)))
        self.points = select_safe_points(game, interior, self.count, 2 * D + 2 * p.sigma)

    def start(self, game, seed):
        self.relocations = 0
        self.pigeonhole_failures = 0

    def qualifying(self, game: Game, cops) -> list[int]:
        """Indices of safe points farther than D + sigma from every cop."""
        near = game.cop_distance(cops)
        limit = self.D + game.params.sigma
        return [i for i, s in enumerate(self.points) if near[s] > limit]

    def place(self, game, state):
        ok = self.qualifying(game, state.cops)
        if not ok:
            self.pigeonhole_failures += 1
            raise StrategyFault("no safe point is clear of the cops", "robber", 0)
        return self.points[ok[0]]

    def move(self, game, history):
        last = history[-1]
        ok = self.qualifying(game, last.cops)
        if not ok:
            self.pigeonhole_failures += 1
            raise StrategyFault("no safe point is clear of the cops", "robber", last.stage)
        if last.robber in {self.points[i] for i in ok}:
            return last.robber
        dist = self._safe_bfs(game, last.cops, last.robber)
        reachable = [i for i in ok if self.points[i] in dist]
        if not reachable:
            raise StrategyFault("no clear safe point is reachable through the safe region", "robber", last.stage)
        best = min(reachable, key=lambda i: (dist[self.points[i]], i))
        if dist[self.points[best]] > game.params.psi:
            raise StrategyFault(
                f"nearest clear safe point is {dist[self.points[best]]} steps away, psi={game.params.psi}",
                "robber",
                last.stage,
            )
        self.relocations += 1
        return self.points[best]

    @staticmethod
    def _safe_bfs(game: Game, cops, start: int) -> dict[int, int]:
        safe = game.cop_distance(cops) > game.params.rho
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in game.graph.neighbors(u):
                if w not in dist and safe[w]:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist
