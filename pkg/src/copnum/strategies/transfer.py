"""Quasi-retractions and cop-strategy transfer along them.

A quasi-retraction from Gamma to Delta is a pair f: Delta -> Gamma,
g: Gamma -> Delta of (C, D)-Lipschitz maps with g(f(x)) within D of x.  A
cop strategy on Gamma then drives cops on Delta: the Delta cops stand on
g(Gamma cops) while the Delta robber is mirrored to f(robber) in a parallel
game on Gamma.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from copnum.constructions.families import path, triangle_ladder
from copnum.errors import InvalidInput, StrategyFault
from copnum.game import CAPTURED, COP_TURN, ROBBER_TURN, Game, GameParams, GameState, Strategy
from copnum.graph import DistanceMatrix, Graph, is_connected
from copnum.graphio import graph_from_dict, graph_to_dict


@dataclass(frozen=True)
class QuasiRetraction:
    gamma: Graph
    delta: Graph
    f: tuple[int, ...]  # Delta -> Gamma
    g: tuple[int, ...]  # Gamma -> Delta
    C: int
    D: int

    def __post_init__(self):
        _check_map(self.f, self.delta.n, self.gamma.n, "f")
        _check_map(self.g, self.gamma.n, self.delta.n, "g")
        if self.C < 1 or self.D < 0:
            raise InvalidInput("quasi-retraction constants need C >= 1 and D >= 0")

    def to_dict(self) -> dict:
        return {
            "gamma": graph_to_dict(self.gamma),
            "delta": graph_to_dict(self.delta),
            "f": list(self.f),
            "g": list(self.g),
            "C": self.C,
            "D": self.D,
        }

    @classmethod
    def from_dict(cls, data: dict) -> QuasiRetraction:
        try:
            return cls(
                graph_from_dict(data["gamma"]),
                graph_from_dict(data["delta"]),
                tuple(int(x) for x in data["f"]),
                tuple(int(x) for x in data["g"]),
                int(data["C"]),
                int(data["D"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed quasi-retraction file: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> QuasiRetraction:
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read quasi-retraction {path}: {exc}") from exc


def _check_map(m, domain: int, codomain: int, name: str) -> None:
    if len(m) != domain:
        raise InvalidInput(f"map {name} has {len(m)} entries for {domain} vertices")
    if any(not 0 <= x < codomain for x in m):
        raise InvalidInput(f"map {name} sends a vertex outside the target graph")


@dataclass(frozen=True)
class QRCheck:
    ok: bool
    C: int | None
    D: int | None
    witness: tuple | None = None  # worst pair for the smallest C when failing
    detail: str = ""


def _worst(excess: np.ndarray) -> tuple[int, tuple[int, int]]:
    flat = int(np.argmax(excess))
    i, j = np.unravel_index(flat, excess.shape)
    return int(excess[i, j]), (int(i), int(j))


def verify_quasi_retraction(
    gamma: Graph, delta: Graph, f, g, c_max: int = 10, d_max: int = 10
) -> QRCheck:
    """Smallest C in 1..c_max, then smallest D <= d_max, making (f, g) a quasi-retraction.

    Exhaustive over all vertex pairs.
    """
    _check_map(f, delta.n, gamma.n, "f")
    _check_map(g, gamma.n, delta.n, "g")
    if not (is_connected(gamma) and is_connected(delta)):
        raise InvalidInput("quasi-retractions are checked between connected graphs")
    dg = DistanceMatrix(gamma).array.astype(np.int64)
    dd = DistanceMatrix(delta).array.astype(np.int64)
    fa, ga = np.asarray(f), np.asarray(g)
    f_img = dg[np.ix_(fa, fa)]  # dist_Gamma(f x, f y)
    g_img = dd[np.ix_(ga, ga)]  # dist_Delta(g a, g b)
    back = dd[ga[fa], np.arange(delta.n)]  # dist_Delta(g f x, x)
    retract_d = int(back.max()) if back.size else 0
    first_fail = None
    for C in range(1, c_max + 1):
        ef, pf = _worst(f_img - C * dd)
        eg, pg = _worst(g_img - C * dg)
        D = max(0, ef, eg, retract_d)
        if D <= d_max:
            return QRCheck(True, C, D)
        if first_fail is None:
            candidates = [(ef, ("f", pf)), (eg, ("g", pg)), (retract_d, ("gf", (int(np.argmax(back)),)))]
            worst = max(candidates, key=lambda t: t[0])
            first_fail = (C, D, worst[1])
    C, D, witness = first_fail
    return QRCheck(False, None, None, witness, f"at C=1 the pair needs D={D} > {d_max}")


def inner_params(qr: QuasiRetraction, outer: GameParams) -> GameParams:
    """Gamma-game parameters whose transfer yields ``outer`` on Delta.

    Inverts sigma_D = C*sigma + D, rho_D = C*rho + C^2 + C*D + 2D + C,
    R = C*R_D + D, psi = (C + D)*psi_D, center f(u0).
    """
    C, D = qr.C, qr.D
    sig, rem = divmod(outer.sigma - D, C)
    if rem or sig < 1:
        raise InvalidInput(f"sigma_Delta={outer.sigma} is not C*sigma + D for an integer sigma >= 1 (C={C}, D={D})")
    rho, rem = divmod(outer.rho - C * C - C * D - 2 * D - C, C)
    if rem or rho < 0:
        raise InvalidInput(
            f"rho_Delta={outer.rho} is not C*rho + C^2 + C*D + 2D + C for an integer rho >= 0 (C={C}, D={D})"
        )
    return GameParams(outer.n, sig, rho, (C + D) * outer.psi, qr.f[outer.v], C * outer.R + D)


@dataclass
class TransferLog:
    shadow_illegal: int = 0  # Gamma-robber moves that broke the Gamma rules
    gamma_captured_stage: int | None = None


class TransferCop(Strategy):
    """Cops on Delta driven by a cop strategy on Gamma."""

    side = "cops"

    def __init__(self, qr: QuasiRetraction, inner: Strategy, game: Game, gamma_game: Game | None = None):
        if inner.side != "cops":
            raise InvalidInput("the transferred strategy must be a cops strategy")
        if not game.graph.same_structure(qr.delta):
            raise InvalidInput("the game graph is not the quasi-retraction's Delta")
        self.qr = qr
        self.inner = inner
        self.gamma_game = gamma_game or Game(qr.gamma, inner_params(qr, game.params))

    def start(self, game, seed):
        self.inner.start(self.gamma_game, seed)
        self.log = TransferLog()
        self.gamma_history: list[GameState] = []

    def _to_delta(self, cops) -> tuple[int, ...]:
        return tuple(self.qr.g[c] for c in cops)

    def place(self, game, state):
        gcops = tuple(int(c) for c in self.inner.place(self.gamma_game, GameState((), None, "cop-placement", 0)))
        self._gamma_cops = gcops
        return self._to_delta(gcops)

    def move(self, game, history):
        last = history[-1]
        gg = self.gamma_game
        r_gamma = self.qr.f[last.robber]
        if not self.gamma_history:
            self.gamma_history = [
                GameState(self._gamma_cops, None, "robber-placement", 0),
                GameState(self._gamma_cops, r_gamma, COP_TURN, 0),
            ]
        else:
            prev = self.gamma_history[-1]
            if prev.phase == ROBBER_TURN:
                if not gg.is_legal_robber_move(prev.cops, prev.robber, r_gamma):
                    self.log.shadow_illegal += 1
                self.gamma_history.append(GameState(prev.cops, r_gamma, COP_TURN, prev.stage))
        cur = self.gamma_history[-1]
        if cur.phase == CAPTURED:
            # the Gamma game is over; keep the Delta cops in place
            return last.cops
        new = tuple(int(c) for c in self.inner.move(gg, self.gamma_history))
        if not gg.is_legal_cop_move(cur.cops, new):
            raise StrategyFault(f"inner strategy made an illegal move {cur.cops} -> {new}", "cops", last.stage + 1)
        stage = cur.stage + 1
        if gg.capture_check(new, cur.robber):
            self.log.gamma_captured_stage = stage
            self.gamma_history.append(GameState(new, cur.robber, CAPTURED, stage))
        else:
            self.gamma_history.append(GameState(new, cur.robber, ROBBER_TURN, stage))
        return self._to_delta(new)


def ladder_edge_quasi_retraction(ray_length: int = 4) -> QuasiRetraction:
    """The triangle-with-rays graph onto its edge {a, b}: f is the inclusion, g sends
    ``a`` to ``a`` and every other vertex to ``b``."""
    gamma = triangle_ladder(ray_length)
    delta = path(2)
    a = min(gamma.annotations["a"])
    b = min(gamma.annotations["b"])
    f = (a, b)
    g = tuple(0 if x == a else 1 for x in range(gamma.n))
    return QuasiRetraction(gamma, delta, f, g, 1, 0)


__all__ = [
    "QRCheck",
    "QuasiRetraction",
    "TransferCop",
    "TransferLog",
    "ladder_edge_quasi_retraction",
    "inner_params",
    "verify_quasi_retraction",
]
