"""Rules of the cops-and-robber game with speed, reach and a protected ball.

A stage is a joint cop move followed by a robber move.  Cops capture when,
after their move, one of them is within ``rho`` of the robber's current
vertex.  The robber then moves along a path of length at most ``psi`` whose
every vertex is farther than ``rho`` from every cop.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np

from copnum.errors import InvalidInput, StrategyFault
from copnum.graph import DistanceMatrix, Graph, ball
from copnum.descriptors import parse_descriptor, to_int

COP_PLACEMENT = "cop-placement"
ROBBER_PLACEMENT = "robber-placement"
COP_TURN = "cop-turn"
ROBBER_TURN = "robber-turn"
CAPTURED = "captured"
PHASES = (COP_PLACEMENT, ROBBER_PLACEMENT, COP_TURN, ROBBER_TURN, CAPTURED)


@dataclass(frozen=True)
class GameParams:
    """(n, sigma, rho, psi, v, R): cop count, cop speed, reach, robber speed, center, radius."""

    n: int
    sigma: int
    rho: int
    psi: int
    v: int
    R: int

    def __post_init__(self):
        for name, low in (("n", 1), ("sigma", 1), ("rho", 0), ("psi", 1), ("R", 1), ("v", 0)):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < low:
                raise InvalidInput(f"{name} must be an integer >= {low}, got {value!r}")

    def check(self, g: Graph) -> GameParams:
        if self.v >= g.n:
            raise InvalidInput(f"center v={self.v} is not a vertex of the graph")
        return self

    def replace(self, **changes) -> GameParams:
        data = asdict(self)
        data.update(changes)
        return GameParams(**data)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def parse(cls, text: str, g: Graph, dm: DistanceMatrix | None = None) -> GameParams:
        """Parse ``n=1,sigma=1,rho=1,psi=8,v=center,R=diam``."""
        _, kwargs, positional = parse_descriptor("params:" + text, nested=())
        if positional:
            raise InvalidInput(f"params must be key=value pairs, got {positional}")
        unknown = set(kwargs) - {"n", "sigma", "rho", "psi", "v", "R"}
        if unknown:
            raise InvalidInput(f"unknown parameter(s) {sorted(unknown)}")
        missing = {"n", "sigma", "rho", "psi", "v", "R"} - set(kwargs)
        if missing:
            raise InvalidInput(f"missing parameter(s) {sorted(missing)}")
        dm = dm or DistanceMatrix(g)
        values = {}
        for key, raw in kwargs.items():
            if key == "v" and raw == "center":
                values[key] = dm.center()
            elif key == "R" and raw in ("diam", "diameter"):
                values[key] = dm.diameter()
            else:
                values[key] = to_int(raw, key)
        return cls(**values).check(g)


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int | None
    phase: str
    stage: int

    def to_dict(self) -> dict:
        return {"stage": self.stage, "phase": self.phase, "cops": list(self.cops), "robber": self.robber}


@dataclass(frozen=True)
class Verdict:
    """CAPTURED(stage), EXPELLED_HORIZON(first stage of the final run outside
    the ball) or SURVIVED_HORIZON(number of stage ends inside the ball)."""

    kind: str
    value: int

    def cops_win(self) -> bool:
        return self.kind != "SURVIVED_HORIZON"

    def __str__(self) -> str:
        return f"{self.kind}({self.value})"


@dataclass
class Trace:
    params: GameParams
    horizon: int
    states: list[GameState]
    verdict: Verdict
    info: dict = field(default_factory=dict)

    def stage_end_robbers(self) -> list[int]:
        """r_0, r_1, ...: robber position at the end of each completed stage."""
        return [s.robber for s in self.states if s.phase == COP_TURN]


class Game:
    """Rules bound to one graph and parameter set."""

    def __init__(self, graph: Graph, params: GameParams, dm: DistanceMatrix | None = None):
        self.graph = graph
        self.params = params.check(graph)
        self.dm = dm or DistanceMatrix(graph)

    def cop_ball(self, c: int) -> list[int]:
        return ball(self.graph, self.dm, c, self.params.sigma)

    def cop_joint_moves(self, cops: Sequence[int]) -> Iterator[tuple[int, ...]]:
        return product(*(self.cop_ball(c) for c in cops))

    def capture_check(self, cops: Sequence[int], robber: int) -> bool:
        row = self.dm.row(robber)
        return any(int(row[c]) <= self.params.rho for c in cops)

    def cop_distance(self, cops: Sequence[int]) -> np.ndarray:
        """Distance from every vertex to the nearest cop."""
        rows = [self.dm.row(c) for c in cops]
        if not rows:
            return np.full(self.graph.n, np.iinfo(np.int32).max, dtype=np.int64)
        return np.minimum.reduce(rows).astype(np.int64) if len(rows) > 1 else rows[0].astype(np.int64)

    def robber_moves(self, cops: Sequence[int], robber: int) -> frozenset:
        """Vertices reachable by a path of length <= psi avoiding every cop's rho-ball."""
        safe = self.cop_distance(cops) > self.params.rho
        return frozenset(_bounded_bfs(self.graph, safe, robber, self.params.psi))

    def robber_path_ok(self, cops: Sequence[int], path: Sequence[int]) -> bool:
        """True if ``path`` is a walk of length <= psi with every vertex safe."""
        if len(path) - 1 > self.params.psi:
            return False
        near = self.cop_distance(cops)
        if any(near[x] <= self.params.rho for x in path):
            return False
        return all(self.graph.has_edge(a, b) for a, b in zip(path, path[1:]))

    def is_legal_robber_move(self, cops: Sequence[int], robber: int, target: int) -> bool:
        if target == robber:
            return True
        safe = self.cop_distance(cops) > self.params.rho
        return target in _bounded_bfs(self.graph, safe, robber, self.params.psi, stop=target)

    def is_legal_cop_move(self, old: Sequence[int], new: Sequence[int]) -> bool:
        if len(new) != len(old):
            return False
        return all(0 <= b < self.graph.n and self.dm(a, b) <= self.params.sigma for a, b in zip(old, new))

    def inside_ball(self, r: int) -> bool:
        return self.dm(self.params.v, r) <= self.params.R


def _bounded_bfs(g: Graph, safe: np.ndarray, start: int, depth: int, stop: int | None = None) -> set[int]:
    if not safe[start]:
        return set()
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in seen and safe[w]:
                    seen.add(w)
                    nxt.append(w)
                    if w == stop:
                        return seen
        if not nxt:
            break
        frontier = nxt
    return seen


class Strategy(ABC):
    """One side's decision procedure.  Instances are confined to one match."""

    side: str = "cops"

    def start(self, game: Game, seed: int) -> None:
        """Called once before placement; randomized strategies seed themselves here."""

    @abstractmethod
    def place(self, game: Game, state: GameState):
        """Cops return a tuple of n vertices; the robber returns one vertex."""

    @abstractmethod
    def move(self, game: Game, history: Sequence[GameState]):
        """Cops return new positions; the robber returns its new vertex."""

    def describe(self) -> str:
        return type(self).__name__


class RandomizedStrategy(Strategy):
    def start(self, game: Game, seed: int) -> None:
        self.rng = random.Random(seed)


def compute_verdict(game: Game, states: Sequence[GameState], horizon: int) -> Verdict:
    last = states[-1]
    if last.phase == CAPTURED:
        return Verdict("CAPTURED", last.stage)
    ends = [s.robber for s in states if s.phase == COP_TURN]
    inside = [game.inside_ball(r) for r in ends]
    if not inside[-1]:
        n0 = len(inside)
        while n0 > 0 and not inside[n0 - 1]:
            n0 -= 1
        return Verdict("EXPELLED_HORIZON", n0)
    return Verdict("SURVIVED_HORIZON", sum(inside))


def play_match(
    g: Graph,
    params: GameParams,
    cop_strategy: Strategy,
    robber_strategy: Strategy,
    horizon: int,
    seed: int = 0,
    dm: DistanceMatrix | None = None,
    game: Game | None = None,
) -> Trace:
    """Run placement and up to ``horizon`` stages, validating every move."""
    if horizon < 1:
        raise InvalidInput("horizon must be >= 1")
    if cop_strategy.side != "cops" or robber_strategy.side != "robber":
        raise InvalidInput("strategy sides do not match their roles")
    game = game or Game(g, params, dm)
    cop_strategy.start(game, seed)
    robber_strategy.start(game, seed + 1)

    state = GameState((), None, COP_PLACEMENT, 0)
    cops = tuple(int(c) for c in cop_strategy.place(game, state))
    if len(cops) != params.n or not all(0 <= c < g.n for c in cops):
        raise StrategyFault(f"illegal cop placement {cops}", "cops", 0)
    state = GameState(cops, None, ROBBER_PLACEMENT, 0)
    history = [state]
    r = int(robber_strategy.place(game, state))
    if not 0 <= r < g.n:
        raise StrategyFault(f"illegal robber placement {r}", "robber", 0)
    state = GameState(cops, r, COP_TURN, 0)
    history.append(state)

    for k in range(1, horizon + 1):
        new = tuple(int(c) for c in cop_strategy.move(game, history))
        if not game.is_legal_cop_move(state.cops, new):
            raise StrategyFault(f"illegal cop move {state.cops} -> {new}", "cops", k)
        if game.capture_check(new, state.robber):
            state = GameState(new, state.robber, CAPTURED, k)
            history.append(state)
            break
        state = GameState(new, state.robber, ROBBER_TURN, k)
        history.append(state)
        r = int(robber_strategy.move(game, history))
        if not game.is_legal_robber_move(new, state.robber, r):
            raise StrategyFault(f"illegal robber move {state.robber} -> {r} against cops {new}", "robber", k)
        state = GameState(new, r, COP_TURN, k)
        history.append(state)
    return Trace(params, horizon, history, compute_verdict(game, history, horizon))
