"""Strategy descriptors for the command line.

Examples: ``greedy``, ``hyperbolic:delta=1``, ``grid_robber``,
``theta_robber``, ``safe_point:D=9,count=3``,
``transfer:qr=qr.json,inner=greedy``, ``lift_theta:n=2,inner=optimal``,
``optimal:from=solver``.
"""

from __future__ import annotations

from copnum.errors import InvalidInput
from copnum.game import Game, Strategy
from copnum.descriptors import parse_descriptor, to_int
from copnum.strategies.baseline import (
    FleeingRobber,
    GreedyPursuitCop,
    RandomCop,
    RandomRobber,
    StationaryCop,
    StationaryRobber,
)
from copnum.strategies.grid import GridRobber
from copnum.strategies.hyperbolic import HyperbolicCop
from copnum.strategies.lift import DEFAULT_RHO_OFFSET, LiftThetaCop, lifted_inner_params
from copnum.strategies.optimal import OptimalCop, OptimalRobber
from copnum.strategies.safe_point import SafePointRobber
from copnum.strategies.theta import ThetaRobber
from copnum.strategies.transfer import QuasiRetraction, TransferCop, inner_params

COP_NAMES = ("greedy", "random", "stationary", "ambush", "hyperbolic", "transfer", "lift_theta", "optimal")
ROBBER_NAMES = ("random", "stationary", "flee", "grid_robber", "theta_robber", "safe_point", "optimal")


def _flag(value: str | None) -> bool:
    return value is not None and value.lower() in ("1", "true", "yes")


def _only(kwargs: dict, allowed: set[str], name: str) -> None:
    extra = set(kwargs) - allowed
    if extra:
        raise InvalidInput(f"strategy {name!r} does not take {sorted(extra)}")


def make_strategy(spec: str, side: str, game: Game) -> Strategy:
    """Build a strategy for ``side`` ("cops" or "robber") bound to ``game``."""
    name, kw, pos = parse_descriptor(spec)
    if pos:
        raise InvalidInput(f"strategy {spec!r}: use key=value arguments")
    if side == "cops":
        return _make_cops(name, kw, game)
    if side == "robber":
        return _make_robber(name, kw, game)
    raise InvalidInput(f"unknown side {side!r}")


def _make_cops(name: str, kw: dict, game: Game) -> Strategy:
    if name == "greedy":
        _only(kw, set(), name)
        return GreedyPursuitCop()
    if name == "random":
        _only(kw, set(), name)
        return RandomCop()
    if name in ("stationary", "ambush"):
        _only(kw, set(), name)
        return StationaryCop()
    if name == "hyperbolic":
        _only(kw, {"delta"}, name)
        if "delta" not in kw:
            raise InvalidInput("hyperbolic needs delta=<int>")
        return HyperbolicCop(game, to_int(kw["delta"], "delta"))
    if name == "optimal":
        _only(kw, {"from", "symmetric"}, name)
        if kw.get("from", "solver") != "solver":
            raise InvalidInput("optimal strategies come from=solver only")
        return OptimalCop(symmetric=_flag(kw.get("symmetric")))
    if name == "transfer":
        _only(kw, {"qr", "inner"}, name)
        if "qr" not in kw or "inner" not in kw:
            raise InvalidInput("transfer needs qr=<file> and inner=<strategy>")
        qr = QuasiRetraction.load(kw["qr"])
        gamma_game = Game(qr.gamma, inner_params(qr, game.params))
        inner = make_strategy(kw["inner"], "cops", gamma_game)
        return TransferCop(qr, inner, game, gamma_game)
    if name == "lift_theta":
        _only(kw, {"n", "rho_offset", "inner"}, name)
        if "inner" not in kw:
            raise InvalidInput("lift_theta needs inner=<strategy>")
        from copnum.constructions.theta import recover_theta_extension

        ann = recover_theta_extension(game.graph)
        if "n" in kw and to_int(kw["n"], "n") != ann.n:
            raise InvalidInput(f"graph is a Theta_{ann.n} extension, not Theta_{kw['n']}")
        offset = to_int(kw.get("rho_offset", DEFAULT_RHO_OFFSET), "rho_offset")
        inner_game = Game(ann.base, lifted_inner_params(game.params, ann, offset))
        inner = make_strategy(kw["inner"], "cops", inner_game)
        return LiftThetaCop(game, inner, ann, offset, inner_game)
    raise InvalidInput(f"unknown cop strategy {name!r}; choose from {', '.join(COP_NAMES)}")


def _make_robber(name: str, kw: dict, game: Game) -> Strategy:
    if name == "random":
        _only(kw, set(), name)
        return RandomRobber()
    if name == "stationary":
        _only(kw, {"vertex"}, name)
        return StationaryRobber(to_int(kw["vertex"], "vertex") if "vertex" in kw else None)
    if name == "flee":
        _only(kw, set(), name)
        return FleeingRobber()
    if name == "grid_robber":
        _only(kw, set(), name)
        return GridRobber(game)
    if name == "theta_robber":
        _only(kw, set(), name)
        return ThetaRobber(game)
    if name == "safe_point":
        _only(kw, {"D", "count"}, name)
        if "D" not in kw:
            raise InvalidInput("safe_point needs D=<int>")
        count = to_int(kw["count"], "count") if "count" in kw else None
        return SafePointRobber(game, to_int(kw["D"], "D"), count)
    if name == "optimal":
        _only(kw, {"from", "symmetric"}, name)
        if kw.get("from", "solver") != "solver":
            raise InvalidInput("optimal strategies come from=solver only")
        return OptimalRobber(symmetric=_flag(kw.get("symmetric")))
    raise InvalidInput(f"unknown robber strategy {name!r}; choose from {', '.join(ROBBER_NAMES)}")
