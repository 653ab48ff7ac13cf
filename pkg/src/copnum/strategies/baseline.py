"""Baseline opponents: greedy pursuit, random walkers and stationary ambushers."""

from __future__ import annotations

from collections.abc import Sequence

from copnum.errors import InvalidInput
from copnum.game import Game, RandomizedStrategy, Strategy
from copnum.graph import ball


def greedy_step(game: Game, c: int, target: int) -> int:
    """Vertex within sigma of ``c`` closest to ``target``; smallest id on ties."""
    row = game.dm.row(target)
    options = game.cop_ball(c)
    return min(options, key=lambda u: (int(row[u]), u))


def farthest_reply(game: Game, cops: Sequence[int], options) -> int:
    """Option maximizing the distance to the nearest cop; smallest id on ties."""
    near = game.cop_distance(cops)
    return min(options, key=lambda u: (-int(near[u]), u))


class GreedyPursuitCop(Strategy):
    """Every cop steps toward the robber's current vertex."""

    side = "cops"

    def place(self, game, state):
        return (game.params.v,) * game.params.n

    def move(self, game, history):
        last = history[-1]
        return tuple(greedy_step(game, c, last.robber) for c in last.cops)


class RandomCop(RandomizedStrategy):
    """Cops start at random vertices of the ball and wander uniformly."""

    side = "cops"

    def place(self, game, state):
        inside = ball(game.graph, game.dm, game.params.v, game.params.R)
        return tuple(self.rng.choice(inside) for _ in range(game.params.n))

    def move(self, game, history):
        return tuple(self.rng.choice(game.cop_ball(c)) for c in history[-1].cops)


class StationaryCop(RandomizedStrategy):
    """Ambush: random vertices of the ball, never moving.  ``positions`` overrides the draw."""

    side = "cops"

    def __init__(self, positions: Sequence[int] | None = None):
        self.positions = tuple(positions) if positions is not None else None

    def place(self, game, state):
        if self.positions is not None:
            return self.positions
        inside = ball(game.graph, game.dm, game.params.v, game.params.R)
        return tuple(self.rng.choice(inside) for _ in range(game.params.n))

    def move(self, game, history):
        return history[-1].cops


class StationaryRobber(Strategy):
    """Stands still at ``vertex`` (default: the vertex farthest from the cops)."""

    side = "robber"

    def __init__(self, vertex: int | None = None):
        self.vertex = vertex

    def place(self, game, state):
        if self.vertex is not None:
            return self.vertex
        return farthest_reply(game, state.cops, range(game.graph.n))

    def move(self, game, history):
        return history[-1].robber


class RandomRobber(RandomizedStrategy):
    """Uniform placement on safe vertices of the ball, uniform legal moves."""

    side = "robber"

    def place(self, game, state):
        near = game.cop_distance(state.cops)
        inside = ball(game.graph, game.dm, game.params.v, game.params.R)
        safe = [u for u in inside if near[u] > game.params.rho + game.params.sigma]
        safe = safe or [u for u in inside if near[u] > game.params.rho] or inside
        return self.rng.choice(safe)

    def move(self, game, history):
        last = history[-1]
        return self.rng.choice(sorted(game.robber_moves(last.cops, last.robber)))


class FleeingRobber(Strategy):
    """Moves to the reachable vertex farthest from the cops."""

    side = "robber"

    def place(self, game, state):
        return farthest_reply(game, state.cops, range(game.graph.n))

    def move(self, game, history):
        last = history[-1]
        return farthest_reply(game, last.cops, game.robber_moves(last.cops, last.robber))


class ScriptedRobber(Strategy):
    """Follows a fixed list of vertices, repeating the cycle after placement."""

    side = "robber"

    def __init__(self, walk: Sequence[int]):
        if not walk:
            raise InvalidInput("walk must be non-empty")
        self.walk = tuple(walk)

    def place(self, game, state):
        return self.walk[0]

    def move(self, game, history):
        stage = history[-1].stage
        return self.walk[stage % len(self.walk)]

