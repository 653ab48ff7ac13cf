"""Positional strategies read off the exact solver.

Outside its winning region a side has no winning move; the cops then fall
back to greedy pursuit and the robber to fleeing from the nearest cop.
"""

from __future__ import annotations

import numpy as np

from copnum.game import Game, Strategy
from copnum.solver import CopWinDecision, decide_copwin
from copnum.strategies.baseline import farthest_reply, greedy_step

_CACHE: dict[tuple, CopWinDecision] = {}
_CACHE_LIMIT = 16


def solve_for(game: Game, symmetric: bool = False, budget: int | None = None) -> CopWinDecision:
    """Solve (and memoize) the game bound to ``game``."""
    key = (game.graph, game.params, symmetric)
    hit = _CACHE.get(key)
    if hit is None:
        hit = decide_copwin(game.graph, game.params, game.dm, budget, symmetric)
        if len(_CACHE) >= _CACHE_LIMIT:
            _CACHE.clear()
        _CACHE[key] = hit
    return hit


class OptimalCop(Strategy):
    side = "cops"

    def __init__(self, decision: CopWinDecision | None = None, symmetric: bool = False):
        self.decision = decision
        self.symmetric = symmetric

    def start(self, game, seed):
        if self.decision is None or self.decision.result.layout.params != game.params:
            self.decision = solve_for(game, self.symmetric)
        self.fallbacks = 0

    def place(self, game, state):
        d = self.decision
        if d.witness is not None:
            return d.witness
        # no winning placement: minimize the number of robber-winning replies
        layout = d.result.layout
        won = d.result.cop_region[: layout.cop_nodes].reshape(layout.configs, layout.V).sum(axis=1)
        best = int(np.argmax(won))
        return tuple(int(x) for x in layout.digits[best])

    def move(self, game, history):
        last = history[-1]
        choice = self.decision.result.cop_move(last.cops, last.robber)
        if choice is not None:
            return choice
        self.fallbacks += 1
        return tuple(greedy_step(game, c, last.robber) for c in last.cops)


class OptimalRobber(Strategy):
    side = "robber"

    def __init__(self, decision: CopWinDecision | None = None, symmetric: bool = False):
        self.decision = decision
        self.symmetric = symmetric

    def start(self, game, seed):
        if self.decision is None or self.decision.result.layout.params != game.params:
            self.decision = solve_for(game, self.symmetric)
        self.fallbacks = 0

    def place(self, game, state):
        result = self.decision.result
        for r in range(game.graph.n):
            if not result.cops_win_from(state.cops, r):
                return r
        return farthest_reply(game, state.cops, range(game.graph.n))

    def move(self, game, history):
        last = history[-1]
        choice = self.decision.result.robber_move(last.cops, last.robber)
        if choice is not None:
            return choice
        self.fallbacks += 1
        return farthest_reply(game, last.cops, game.robber_moves(last.cops, last.robber))
