"""Single cop on a delta-hyperbolic graph.

The cop always stands on a geodesic from the center ``u0`` to the robber.
When the robber moves, the cop finds a vertex ``y`` of the new geodesic
within ``delta`` of itself and advances ``delta + 1`` beyond ``y``; its
distance from ``u0`` grows every stage, so it eventually either reaches the
robber or pushes him out of the ball.
"""

from __future__ import annotations

from dataclasses import dataclass

from copnum.errors import InvalidInput, StrategyFault
from copnum.game import Game, Strategy
from copnum.graph import geodesic


def ceil_log2(x: int) -> int:
    if x < 1:
        raise InvalidInput("log2 needs a positive argument")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class HyperbolicCopParams:
    delta: int

    def __post_init__(self):
        if self.delta < 0:
            raise InvalidInput("delta must be >= 0")

    @property
    def sigma(self) -> int:
        return 2 * self.delta + 1

    def rho(self, psi: int) -> int:
        # ceiling of log2 keeps the reach integral and only enlarges it
        return self.delta * ceil_log2(psi) + self.delta + psi + 1


@dataclass(frozen=True)
class StageRecord:
    stage: int
    cop: int
    robber_prev: int
    on_geodesic: bool
    depth: int  # dist(u0, cop)


class HyperbolicCop(Strategy):
    side = "cops"

    def __init__(self, game: Game, delta: int):
        self.hp = HyperbolicCopParams(delta)
        p = game.params
        if p.n != 1:
            raise InvalidInput("the hyperbolic strategy drives a single cop")
        if p.sigma < self.hp.sigma:
            raise InvalidInput(f"sigma={p.sigma} is below 2*delta+1={self.hp.sigma}")
        if p.rho < self.hp.rho(p.psi):
            raise InvalidInput(f"rho={p.rho} is below delta*ceil(log2 psi)+delta+psi+1={self.hp.rho(p.psi)}")

    def start(self, game, seed):
        self.u0 = game.params.v
        self.path: list[int] | None = None
        self.log: list[StageRecord] = []

    def place(self, game, state):
        return (self.u0,)

    def move(self, game, history):
        last = history[-1]
        c, r = last.cops[0], last.robber
        dm = game.dm
        d = self.hp.delta
        new_path = geodesic(game.graph, dm, self.u0, r)
        if self.path is None:
            target = new_path[min(game.params.sigma, len(new_path) - 1)]
        else:
            row = dm.row(c)
            # closest vertex of the new geodesic, farthest from u0 on ties
            idx = min(range(len(new_path)), key=lambda i: (int(row[new_path[i]]), -i))
            gap = int(row[new_path[idx]])
            if gap > d:
                raise StrategyFault(
                    f"no vertex of the new geodesic within delta={d} of the cop (closest is {gap} away)",
                    "cops",
                    last.stage + 1,
                )
            target = new_path[min(idx + d + 1, len(new_path) - 1)]
        self.path = new_path
        self.log.append(
            StageRecord(
                last.stage + 1,
                target,
                r,
                dm(self.u0, target) + dm(target, r) == dm(self.u0, r),
                dm(self.u0, target),
            )
        )
        return (target,)
