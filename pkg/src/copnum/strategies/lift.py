"""Lift a cop strategy from a base graph to its Theta_n extension.

Cop ``(i, k)`` stands on the image in copy ``k`` of inner cop ``i``, and the
inner game sees the robber's shadow.  Once the inner robber is caught, the
Theta robber is stuck inside the bridge over the caught vertex: both ends
are within reach of a cop.  The two cops guarding those ends then walk into
the bridge until one of them catches him.
"""

from __future__ import annotations

from dataclasses import dataclass

from copnum.constructions.theta import ThetaExtensionAnnotations, recover_theta_extension
from copnum.errors import InvalidInput, StrategyFault
from copnum.game import CAPTURED, COP_TURN, ROBBER_TURN, Game, GameParams, GameState, Strategy
from copnum.graph import geodesic

DEFAULT_RHO_OFFSET = 2


def lifted_inner_params(outer: GameParams, ann: ThetaExtensionAnnotations, rho_offset: int) -> GameParams:
    copies = ann.n
    if outer.n % copies:
        raise InvalidInput(f"{outer.n} cops cannot be split evenly over {copies} copies")
    rho = outer.rho - rho_offset
    if rho < 0:
        raise InvalidInput(f"rho={outer.rho} leaves a negative inner reach with offset {rho_offset}")
    return GameParams(outer.n // copies, outer.sigma, rho, outer.psi, ann.shadow[outer.v], outer.R)


@dataclass
class LiftLog:
    shadow_illegal: int = 0
    inner_captured_stage: int | None = None
    endgame_stages: int = 0


class LiftThetaCop(Strategy):
    side = "cops"

    def __init__(
        self,
        game: Game,
        inner: Strategy,
        ann: ThetaExtensionAnnotations | None = None,
        rho_offset: int = DEFAULT_RHO_OFFSET,
        inner_game: Game | None = None,
    ):
        if inner.side != "cops":
            raise InvalidInput("the lifted strategy must be a cops strategy")
        self.ann = ann or recover_theta_extension(game.graph)
        self.inner = inner
        self.inner_game = inner_game or Game(self.ann.base, lifted_inner_params(game.params, self.ann, rho_offset))

    def start(self, game, seed):
        self.inner.start(self.inner_game, seed)
        self.log = LiftLog()
        self.history: list[GameState] = []
        self.endgame: tuple | None = None

    def _lift(self, cops) -> tuple[int, ...]:
        return tuple(self.ann.copies[k][c] for c in cops for k in range(self.ann.n))

    def place(self, game, state):
        cops = tuple(int(c) for c in self.inner.place(self.inner_game, GameState((), None, "cop-placement", 0)))
        self._inner_cops = cops
        return self._lift(cops)

    def move(self, game, history):
        last = history[-1]
        if self.endgame is not None:
            return self._endgame_move(game, last)
        ig = self.inner_game
        shadow = self.ann.shadow[last.robber]
        if not self.history:
            self.history = [
                GameState(self._inner_cops, None, "robber-placement", 0),
                GameState(self._inner_cops, shadow, COP_TURN, 0),
            ]
        else:
            prev = self.history[-1]
            if prev.phase == ROBBER_TURN:
                if not ig.is_legal_robber_move(prev.cops, prev.robber, shadow):
                    self.log.shadow_illegal += 1
                self.history.append(GameState(prev.cops, shadow, COP_TURN, prev.stage))
        cur = self.history[-1]
        new = tuple(int(c) for c in self.inner.move(ig, self.history))
        if not ig.is_legal_cop_move(cur.cops, new):
            raise StrategyFault(f"inner strategy made an illegal move {cur.cops} -> {new}", "cops", last.stage + 1)
        stage = cur.stage + 1
        if ig.capture_check(new, cur.robber):
            self.log.inner_captured_stage = stage
            self.history.append(GameState(new, cur.robber, CAPTURED, stage))
            self._arm_endgame(game, new, last.robber)
        else:
            self.history.append(GameState(new, cur.robber, ROBBER_TURN, stage))
        return self._lift(new)

    def _arm_endgame(self, game, inner_cops, robber: int) -> None:
        bridge = self.ann.bridge_of.get(robber)
        if bridge is None:
            return  # the robber stands in a copy and is caught right now
        a, b, x = bridge
        dmi = self.inner_game.dm
        i = next(i for i, c in enumerate(inner_cops) if dmi(c, x) <= self.inner_game.params.rho)
        path = self.ann.bridges[(a, b, x)]
        copies = self.ann.n
        self.endgame = (i * copies + a, i * copies + b, path)

    def _endgame_move(self, game, last) -> tuple[int, ...]:
        ia, ib, path = self.endgame
        self.log.endgame_stages += 1
        cops = list(last.cops)
        r = last.robber
        if r not in path:
            raise StrategyFault(f"robber escaped the bridge to {r}", "cops", last.stage + 1)
        cops[ia] = self._walk_in(game, cops[ia], path, r)
        cops[ib] = self._walk_in(game, cops[ib], path[::-1], r)
        return tuple(cops)

    @staticmethod
    def _walk_in(game, c: int, path, r: int) -> int:
        """Advance sigma steps toward ``path[0]`` and then along ``path`` toward ``r``."""
        sigma = game.params.sigma
        stop = path.index(r)
        if c in path[:stop + 1]:
            return path[min(path.index(c) + sigma, stop)]
        d = game.dm(c, path[0])
        if d >= sigma:
            return geodesic(game.graph, game.dm, c, path[0])[sigma]
        return path[min(sigma - d, stop)]
