"""Robber on the subdivided K_n x K_2 graph that evades n - 1 cops.

The robber rests on a corner.  When a cop gets closer than m/2, he picks a
bridge out of his sibling pair that no cop blocks and leading to a pair far
from every cop, then runs along it at full speed.
"""

from __future__ import annotations

from fractions import Fraction

from copnum.constructions.theta import ThetaNMAnnotations, recover_theta_nm
from copnum.errors import InvalidInput, StrategyFault
from copnum.game import Game, Strategy


def theta_conditions(m: int, sigma: int, rho: int, psi: int) -> list[str]:
    """Failed robber-win conditions for theta_nm (empty when all hold)."""
    failed = []
    if not psi > sigma + 2:
        failed.append(f"psi > sigma + 2 fails: {psi} <= {sigma + 2}")
    if not m > 2 * (sigma + rho):
        failed.append(f"m > 2(sigma + rho) fails: {m} <= {2 * (sigma + rho)}")
    bound = Fraction(m, 2) - sigma * (-(-(m + 2) // psi))
    if not rho < bound:
        failed.append(f"rho < m/2 - sigma*ceil((m+2)/psi) fails: {rho} >= {bound}")
    if not rho > 0:
        failed.append("rho > 0 fails")
    return failed


class ThetaSelector:
    """Sibling-pair selection on theta_nm.  Pairs are identified by copy index."""

    def __init__(self, game: Game, ann: ThetaNMAnnotations):
        self.ann = ann
        self.dm = game.dm
        self.pairs = ann.sibling_pairs()

    def pair_distance(self, v: int, k: int) -> int:
        a, b = self.pairs[k]
        return min(self.dm(v, a), self.dm(v, b))

    def nearest_pair(self, v: int) -> int:
        """E(v): the sibling pair closest to ``v``, smallest copy on ties."""
        return min(range(self.ann.n), key=lambda k: (self.pair_distance(v, k), k))

    def bridges_from(self, s: int) -> list[tuple[int, int]]:
        """All bridges out of pair ``s`` as (level, other copy)."""
        return [(lvl, j) for lvl in (1, 2) for j in range(self.ann.n) if j != s]

    def covered(self, s: int, v: int) -> set[tuple[int, int]]:
        e = self.nearest_pair(v)
        if e != s:
            return {(1, e), (2, e)}
        return {(lvl, j) for lvl, j in self.bridges_from(s) if v in self.ann.bridge_path(lvl, s, j)}

    def choose(self, s: int, cops) -> tuple[int, tuple[int, int] | None]:
        """Target pair T and the bridge toward it (None when T = S)."""
        blocked: set[tuple[int, int]] = set()
        for c in cops:
            blocked |= self.covered(s, c)
        free = [b for b in self.bridges_from(s) if b not in blocked]
        if not free:
            return s, None
        lvl, j = free[0]
        return j, (lvl, j)


class ThetaRobber(Strategy):
    side = "robber"

    def __init__(self, game: Game, ann: ThetaNMAnnotations | None = None):
        self.ann = ann or recover_theta_nm(game.graph)
        p = game.params
        failed = theta_conditions(self.ann.m, p.sigma, p.rho, p.psi)
        if failed:
            raise InvalidInput("theta robber preconditions fail: " + "; ".join(failed))
        if p.n > self.ann.n - 1:
            raise InvalidInput(f"theta robber evades at most {self.ann.n - 1} cops, got n={p.n}")
        self.sel = ThetaSelector(game, self.ann)

    def start(self, game, seed):
        self.route: list[int] = []
        self.relocations = 0

    def place(self, game, state):
        cops = set(state.cops)
        s = next((k for k, pair in enumerate(self.sel.pairs) if not cops & set(pair)), None)
        if s is None:
            raise StrategyFault("every sibling pair holds a cop", "robber", 0)
        t, _ = self.sel.choose(s, state.cops)
        return min(self.sel.pairs[t])

    def _pair_of(self, v: int) -> int | None:
        for k, pair in enumerate(self.sel.pairs):
            if v in pair:
                return k
        return None

    def move(self, game, history):
        last = history[-1]
        r, psi = last.robber, game.params.psi
        if self.route:
            step, self.route = self.route[:psi], self.route[psi:]
            return step[-1]
        near = min(self.sel.dm(c, r) for c in last.cops)
        if 2 * near >= self.ann.m:
            return r
        s = self._pair_of(r)
        if s is None:
            raise StrategyFault(f"robber left the corners at {r}", "robber", last.stage)
        t, bridge = self.sel.choose(s, last.cops)
        if bridge is None:
            return r
        lvl, j = bridge
        path = list(self.ann.bridge_path(lvl, s, j))
        if path[0] != r:
            path = [r, *path]
        self.relocations += 1
        self.route = path[1:]
        step, self.route = self.route[:psi], self.route[psi:]
        return step[-1]
