"""Exact adjudication of the protection game on finite graphs.

The robber wins a play when he is never captured and stands inside the
ball B_R(v) at the end of infinitely many stages.  On a finite arena this is
a Buchi objective for the robber; its complement ("capture, or eventually
stay outside the ball forever") is exactly the cops' protection goal.

Arena layout for a game with ``K`` cop configurations on ``V`` vertices:

* cop-owner node ``(c, r)`` has id ``code(c) * V + r`` (cops to move, the
  robber stands on ``r`` at the end of the previous stage);
* robber-owner node ``(c', r)`` has id ``N + code(c') * V + r`` with
  ``N = K * V`` and exists only when no cop of ``c'`` is within reach of ``r``;
* the capture sink has id ``2N``.

Configuration codes are lexicographic with cop 1 most significant.
"""

from __future__ import annotations

import os
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product

import numpy as np

from copnum.errors import InvalidInput, ResourceLimit
from copnum.game import GameParams
from copnum.graph import DistanceMatrix, Graph

DEFAULT_STATE_BUDGET = 5_000_000
BUDGET_ENV = "COPNUM_STATE_BUDGET"
EDGE_BUDGET_FACTOR = 40
REACH_CHUNK = 1 << 22


def state_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidInput(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_STATE_BUDGET


def _ranges(starts: np.ndarray, lens: np.ndarray) -> np.ndarray:
    """Concatenation of ``arange(s, s + l)`` for each pair."""
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.cumsum(lens) - lens
    return np.arange(total, dtype=np.int64) - np.repeat(offsets, lens) + np.repeat(starts, lens)


def _csr(src: np.ndarray, dst: np.ndarray, count: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(src, kind="stable")
    ptr = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=count), out=ptr[1:])
    return ptr, dst[order].astype(np.int64)


@dataclass
class Arena:
    """Two-player graph with a Buchi target for the robber.

    ``cop_owned`` marks nodes where the cops choose; ``exists`` masks out
    placeholder ids that are not real nodes.  The optional ``layout`` ties
    node ids back to game positions.
    """

    node_count: int
    cop_owned: np.ndarray
    exists: np.ndarray
    target: np.ndarray
    succ_ptr: np.ndarray
    succ_idx: np.ndarray
    sink: int | None = None
    layout: GameLayout | None = None
    pred_ptr: np.ndarray = field(init=False, repr=False)
    pred_idx: np.ndarray = field(init=False, repr=False)
    edge_src: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        degrees = np.diff(self.succ_ptr)
        self.edge_src = np.repeat(np.arange(self.node_count, dtype=np.int64), degrees)
        self.pred_ptr, self.pred_idx = _csr(self.succ_idx, self.edge_src, self.node_count)

    @classmethod
    def from_edges(
        cls,
        owners: Sequence[str],
        edges: Sequence[tuple[int, int]],
        target: Sequence[int],
        sink: int | None = None,
    ) -> Arena:
        """Hand-made arena; ``owners[i]`` is ``"cops"`` or ``"robber"``."""
        n = len(owners)
        if any(o not in ("cops", "robber") for o in owners):
            raise InvalidInput("owners must be 'cops' or 'robber'")
        src = np.array([u for u, _ in edges], dtype=np.int64)
        dst = np.array([v for _, v in edges], dtype=np.int64)
        if len(edges) and (src.min() < 0 or dst.min() < 0 or max(src.max(), dst.max()) >= n):
            raise InvalidInput("arena edge endpoint out of range")
        ptr, idx = _csr(src, dst, n)
        tgt = np.zeros(n, dtype=bool)
        tgt[list(target)] = True
        owned = np.array([o == "cops" for o in owners], dtype=bool)
        return cls(n, owned, np.ones(n, dtype=bool), tgt, ptr, idx, sink)

    @property
    def edge_count(self) -> int:
        return int(self.succ_idx.size)

    def successors(self, u: int) -> np.ndarray:
        return self.succ_idx[self.succ_ptr[u] : self.succ_ptr[u + 1]]

    def check(self) -> None:
        """Every existing node except the sink has a successor; the sink has none."""
        deg = np.diff(self.succ_ptr)
        live = self.exists.copy()
        if self.sink is not None:
            live[self.sink] = False
            if deg[self.sink]:
                raise InvalidInput("the capture sink must have no successors")
        if np.any(deg[live] == 0):
            raise InvalidInput("arena has a dead-end node")


@dataclass
class GameLayout:
    graph: Graph
    params: GameParams
    symmetric: bool
    digits: np.ndarray  # config index -> cop positions
    canon: np.ndarray  # full lexicographic code -> config index
    dm: DistanceMatrix = field(repr=False)

    @property
    def V(self) -> int:
        return self.graph.n

    @property
    def configs(self) -> int:
        return int(self.digits.shape[0])

    @property
    def cop_nodes(self) -> int:
        return self.configs * self.V

    def config_index(self, cops: Sequence[int]) -> int:
        if len(cops) != self.params.n:
            raise InvalidInput(f"expected {self.params.n} cop positions, got {len(cops)}")
        code = 0
        for c in cops:
            code = code * self.V + int(c)
        return int(self.canon[code])

    def cop_node(self, cops: Sequence[int], r: int) -> int:
        return self.config_index(cops) * self.V + int(r)

    def robber_node(self, cops: Sequence[int], r: int) -> int:
        return self.cop_nodes + self.cop_node(cops, r)

    def decode(self, node: int) -> tuple[str, tuple[int, ...], int]:
        if node == 2 * self.cop_nodes:
            return "captured", (), -1
        owner = "cops" if node < self.cop_nodes else "robber"
        cfg, r = divmod(node % self.cop_nodes, self.V)
        return owner, tuple(int(x) for x in self.digits[cfg]), int(r)


def _configs(V: int, n: int, symmetric: bool) -> tuple[np.ndarray, np.ndarray]:
    full = V**n
    if not symmetric or n == 1:
        codes = np.arange(full, dtype=np.int64)
        digits = np.stack([(codes // V ** (n - 1 - i)) % V for i in range(n)], axis=1)
        return digits, codes
    digits = np.array(list(combinations_with_replacement(range(V), n)), dtype=np.int64)
    all_codes = np.arange(full, dtype=np.int64)
    all_digits = np.sort(np.stack([(all_codes // V ** (n - 1 - i)) % V for i in range(n)], axis=1), axis=1)
    sorted_code = np.zeros(full, dtype=np.int64)
    for i in range(n):
        sorted_code = sorted_code * V + all_digits[:, i]
    rep_code = np.zeros(len(digits), dtype=np.int64)
    for i in range(n):
        rep_code = rep_code * V + digits[:, i]
    canon = np.searchsorted(rep_code, sorted_code)
    return digits, canon


def build_arena(
    g: Graph,
    params: GameParams,
    dm: DistanceMatrix | None = None,
    budget: int | None = None,
    symmetric: bool = False,
) -> Arena:
    params.check(g)
    V, n = g.n, params.n
    limit = state_budget(budget)
    required = V ** (n + 1)
    if required > limit:
        raise ResourceLimit(
            f"arena needs {required} cop-owner states (|V|^(n+1)), budget is {limit}", required, limit
        )
    dm = dm or DistanceMatrix(g)
    D = dm.array.astype(np.int32)
    digits, canon = _configs(V, n, symmetric)
    K = len(digits)
    N = K * V
    sink = 2 * N

    # nearest-cop distance per (config, robber vertex)
    mind = D[digits[:, 0]]
    for i in range(1, n):
        mind = np.minimum(mind, D[digits[:, i]])
    safe = mind > params.rho

    # joint cop moves per configuration
    balls = [np.flatnonzero(D[v] <= params.sigma) for v in range(V)]
    conf_lists = []
    for cfg in digits:
        codes = np.zeros(1, dtype=np.int64)
        for c in cfg:
            codes = (codes[:, None] * V + balls[c][None, :]).ravel()
        conf_lists.append(np.unique(canon[codes]))
    conf_len = np.array([len(x) for x in conf_lists], dtype=np.int64)
    conf_succ = np.concatenate(conf_lists)
    conf_ptr = np.zeros(K + 1, dtype=np.int64)
    np.cumsum(conf_len, out=conf_ptr[1:])

    cop_edges = int(conf_len.sum()) * V
    edge_limit = EDGE_BUDGET_FACTOR * limit
    if cop_edges > edge_limit:
        raise ResourceLimit(f"arena needs {cop_edges} cop edges, budget is {edge_limit}", cop_edges, edge_limit)

    node_len = np.repeat(conf_len, V)
    entry = _ranges(np.repeat(conf_ptr[:-1], V), node_len)
    cop_src = np.repeat(np.arange(N, dtype=np.int64), node_len)
    nxt_cfg = conf_succ[entry]
    r_of = cop_src % V
    captured = ~safe[nxt_cfg, r_of]
    cop_dst = np.where(captured, sink, N + nxt_cfg * V + r_of)
    del entry, nxt_cfg, r_of, captured

    # robber moves: bounded BFS inside the safe set, batched over configurations
    A = np.zeros((V, V), dtype=np.float32)
    for u in range(V):
        A[u, list(g.neighbors(u))] = 1.0
    rob_src_parts, rob_dst_parts = [], []
    total_rob = 0
    batch = max(1, REACH_CHUNK // max(1, V * V))
    eye = np.eye(V, dtype=bool)
    for start in range(0, K, batch):
        s = safe[start : start + batch]
        reach = eye[None, :, :] & s[:, :, None]
        for _ in range(params.psi):
            grown = reach | ((reach.astype(np.float32) @ A) > 0) & s[:, None, :]
            if np.array_equal(grown, reach):
                break
            reach = grown
        b, r, r2 = np.nonzero(reach)
        cfg = b.astype(np.int64) + start
        total_rob += len(cfg)
        if total_rob + cop_edges > edge_limit:
            raise ResourceLimit(
                f"arena needs more than {edge_limit} edges; budget exceeded", total_rob + cop_edges, edge_limit
            )
        rob_src_parts.append(N + cfg * V + r)
        rob_dst_parts.append(cfg * V + r2)
    rob_src = np.concatenate(rob_src_parts)
    rob_dst = np.concatenate(rob_dst_parts)

    count = 2 * N + 1
    src = np.concatenate([cop_src, rob_src])
    dst = np.concatenate([cop_dst, rob_dst])
    ptr = np.zeros(count + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=count), out=ptr[1:])
    cop_owned = np.zeros(count, dtype=bool)
    cop_owned[:N] = True
    cop_owned[sink] = True
    exists = np.ones(count, dtype=bool)
    exists[N : 2 * N] = safe.ravel()
    target = np.zeros(count, dtype=bool)
    target[:N] = np.tile(D[params.v] <= params.R, K)
    layout = GameLayout(g, params, symmetric, digits, canon, dm)
    # src is already sorted: cop nodes first, then robber nodes in id order
    return Arena(count, cop_owned, exists, target, ptr, dst.astype(np.int64), sink, layout)


def attractor(arena: Arena, cops: bool, targets: np.ndarray, sub: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nodes of ``sub`` from which one side can force a visit to ``targets``.

    Returns the attractor mask and the round at which each node joined it
    (-1 outside).  Opponent nodes join when all their successors inside
    ``sub`` are attracted, tracked with out-degree counters.
    """
    mine = arena.cop_owned if cops else ~arena.cop_owned
    attr = targets & sub
    rank = np.full(arena.node_count, -1, dtype=np.int64)
    rank[attr] = 0
    live = sub[arena.succ_idx]
    count = np.bincount(arena.edge_src[live], minlength=arena.node_count)
    frontier = np.flatnonzero(attr)
    k = 0
    while frontier.size:
        k += 1
        starts = arena.pred_ptr[frontier]
        lens = arena.pred_ptr[frontier + 1] - starts
        preds = arena.pred_idx[_ranges(starts, lens)]
        preds = preds[sub[preds] & ~attr[preds]]
        own = np.unique(preds[mine[preds]])
        other, hits = np.unique(preds[~mine[preds]], return_counts=True)
        count[other] -= hits
        forced = other[count[other] == 0]
        frontier = np.union1d(own, forced)
        attr[frontier] = True
        rank[frontier] = k
    return attr, rank


def _choose_by_rank(arena: Arena, nodes: np.ndarray, rank: np.ndarray, choice: np.ndarray) -> None:
    """For each node pick the successor of smallest (rank >= 0, id)."""
    if nodes.size == 0:
        return
    starts = arena.succ_ptr[nodes]
    lens = arena.succ_ptr[nodes + 1] - starts
    succ = arena.succ_idx[_ranges(starts, lens)]
    r = rank[succ]
    big = np.int64(arena.node_count + 1)
    key = np.where(r >= 0, r * big + succ, np.iinfo(np.int64).max)
    offsets = np.cumsum(lens) - lens
    best = np.minimum.reduceat(key, offsets)
    choice[nodes] = best % big


def _choose_inside(arena: Arena, nodes: np.ndarray, region: np.ndarray, choice: np.ndarray) -> None:
    """For each node pick its smallest successor inside ``region``."""
    if nodes.size == 0:
        return
    starts = arena.succ_ptr[nodes]
    lens = arena.succ_ptr[nodes + 1] - starts
    succ = arena.succ_idx[_ranges(starts, lens)]
    key = np.where(region[succ], succ, np.iinfo(np.int64).max)
    best = np.minimum.reduceat(key, np.cumsum(lens) - lens)
    if np.any(best == np.iinfo(np.int64).max):
        raise AssertionError("trap node without a successor in its trap")
    choice[nodes] = best


@dataclass
class SolverResult:
    """Winning regions and positional strategies.

    ``cop_choice[u]`` / ``robber_choice[u]`` hold the chosen successor node
    for nodes owned by that side inside its winning region, else -1.
    """

    arena: Arena
    cop_region: np.ndarray
    robber_region: np.ndarray
    cop_choice: np.ndarray
    robber_choice: np.ndarray
    iterations: int

    @property
    def layout(self) -> GameLayout:
        if self.arena.layout is None:
            raise InvalidInput("this arena is not tied to a game")
        return self.arena.layout

    def cops_win_from(self, cops: Sequence[int], r: int) -> bool:
        return bool(self.cop_region[self.layout.cop_node(cops, r)])

    def robber_wins_from(self, cops: Sequence[int], r: int) -> bool:
        """Robber-owner node ``(cops, r)`` after the cops moved."""
        return bool(self.robber_region[self.layout.robber_node(cops, r)])

    def cop_move(self, cops: Sequence[int], r: int) -> tuple[int, ...] | None:
        """Winning joint move from cop-owner node ``(cops, r)``, or None outside the cop region."""
        layout = self.layout
        choice = int(self.cop_choice[layout.cop_node(cops, r)])
        if choice < 0:
            return None
        if choice == self.arena.sink:
            # any capturing joint move: reproduce one in config order
            target = self._capturing_config(cops, r)
        else:
            _, target, _ = layout.decode(choice)
        return _assign(layout, cops, target)

    def _capturing_config(self, cops, r) -> tuple[int, ...]:
        layout = self.layout
        p, dm = layout.params, layout.dm
        node = layout.cop_node(cops, r)
        # sink edges carry no config; rebuild the smallest capturing joint move
        balls = [np.flatnonzero(dm.row(c) <= p.sigma) for c in cops]
        best = None
        for combo in product(*balls):
            if any(dm(c, r) <= p.rho for c in combo):
                cand = tuple(int(x) for x in combo)
                key = layout.config_index(cand)
                if best is None or key < best[0]:
                    best = (key, cand)
        if best is None:
            raise AssertionError(f"node {node} chose capture but no capturing move exists")
        return tuple(int(x) for x in layout.digits[best[0]])

    def robber_move(self, cops: Sequence[int], r: int) -> int | None:
        """Winning reply from robber-owner node ``(cops, r)``, or None outside the robber region."""
        choice = int(self.robber_choice[self.layout.robber_node(cops, r)])
        if choice < 0:
            return None
        return choice % self.layout.V


def _assign(layout: GameLayout, cops: Sequence[int], target: Sequence[int]) -> tuple[int, ...]:
    """Map a (possibly sorted) target configuration onto the individual cops."""
    if not layout.symmetric:
        return tuple(int(x) for x in target)
    sigma, dm = layout.params.sigma, layout.dm
    for perm in permutations(target):
        if all(dm(a, b) <= sigma for a, b in zip(cops, perm)):
            return tuple(int(x) for x in perm)
    raise AssertionError("no legal assignment of cops to the chosen configuration")


def solve_buchi(arena: Arena) -> SolverResult:
    """Winning regions for the robber's Buchi objective (target infinitely often, never the sink).

    W_cop starts as the cops' attractor to the sink.  Then, on the remaining
    subgame, the robber's attractor A to the target is computed; the rest of
    the subgame is a trap where the robber never sees the target, and the
    cops' attractor to that trap is added to W_cop.  When the trap is empty
    the remaining subgame is the robber's region.
    """
    n = arena.node_count
    cop_choice = np.full(n, -1, dtype=np.int64)
    robber_choice = np.full(n, -1, dtype=np.int64)
    sub = arena.exists.copy()
    cop_win = np.zeros(n, dtype=bool)
    if arena.sink is not None:
        sink_mask = np.zeros(n, dtype=bool)
        sink_mask[arena.sink] = True
        won, rank = attractor(arena, True, sink_mask, sub)
        _choose_by_rank(arena, np.flatnonzero(won & (rank > 0) & arena.cop_owned), rank, cop_choice)
        cop_win |= won
        sub &= ~won
    iterations = 0
    while True:
        iterations += 1
        reach, rrank = attractor(arena, False, arena.target & sub, sub)
        trap = sub & ~reach
        if not trap.any():
            robber_nodes = np.flatnonzero(sub & ~arena.cop_owned)
            _choose_by_rank(arena, robber_nodes, rrank, robber_choice)
            break
        won, rank = attractor(arena, True, trap, sub)
        _choose_by_rank(arena, np.flatnonzero(won & (rank > 0) & arena.cop_owned), rank, cop_choice)
        _choose_inside(arena, np.flatnonzero(trap & arena.cop_owned), trap, cop_choice)
        cop_win |= won
        sub &= ~won
    if arena.sink is not None:
        cop_win[arena.sink] = False
    live = arena.exists.copy()
    if arena.sink is not None:
        live[arena.sink] = False
    return SolverResult(arena, cop_win & live, sub & live, cop_choice, robber_choice, iterations)


@dataclass
class CopWinDecision:
    copwin: bool
    witness: tuple[int, ...] | None
    result: SolverResult
    states: int
    millis: int

    def to_dict(self) -> dict:
        return {
            "copwin": self.copwin,
            "witness": list(self.witness) if self.witness is not None else None,
            "states": self.states,
            "millis": self.millis,
        }


def decide_copwin(
    g: Graph,
    params: GameParams,
    dm: DistanceMatrix | None = None,
    budget: int | None = None,
    symmetric: bool = False,
) -> CopWinDecision:
    """Is there a cop placement that wins against every robber placement?

    The witness is the winning placement with the smallest configuration code.
    """
    t0 = time.perf_counter()
    arena = build_arena(g, params, dm, budget, symmetric)
    result = solve_buchi(arena)
    layout = arena.layout
    V = layout.V
    per_config = result.cop_region[: layout.cop_nodes].reshape(layout.configs, V).all(axis=1)
    winners = np.flatnonzero(per_config)
    witness = tuple(int(x) for x in layout.digits[winners[0]]) if winners.size else None
    millis = int(round((time.perf_counter() - t0) * 1000))
    states = int(arena.exists.sum())
    return CopWinDecision(witness is not None, witness, result, states, millis)


@dataclass(frozen=True)
class ProbeRow:
    sigma: int
    rho: int
    psi: int | None
    R: int | None
    minimal_n: int | None  # None means "more than n_max"

    def label(self, n_max: int) -> str:
        return str(self.minimal_n) if self.minimal_n is not None else f">{n_max}"


def _minimal_n(task) -> int | None:
    g, sigma, rho, psi, R, v, n_max, budget, symmetric = task
    dm = DistanceMatrix(g)
    for n in range(1, n_max + 1):
        params = GameParams(n, sigma, rho, psi, v, R)
        if decide_copwin(g, params, dm, budget, symmetric).copwin:
            return n
    return None


def cop_number_probe(
    g: Graph,
    sigma_grid: Sequence[int],
    rho_grid: Sequence[int],
    psi_grid: Sequence[int],
    R_grid: Sequence[int],
    v: int,
    n_max: int,
    workers: int = 1,
    budget: int | None = None,
    symmetric: bool = False,
) -> list[ProbeRow]:
    """Grid-relative evidence, not a cop number.

    One row per (sigma, rho, psi, R) with the least n <= n_max that wins, then
    one summary row per (sigma, rho) (psi and R set to None) holding the least
    n that wins for every (psi, R) in the grids.
    """
    if n_max < 1:
        raise InvalidInput("n_max must be >= 1")
    cells = [(s, r, p, R) for s in sigma_grid for r in rho_grid for p in psi_grid for R in R_grid]
    if not cells:
        return []
    tasks = [(g, s, r, p, R, v, n_max, budget, symmetric) for s, r, p, R in cells]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(_minimal_n, tasks))
    else:
        found = [_minimal_n(t) for t in tasks]
    rows = [ProbeRow(s, r, p, R, m) for (s, r, p, R), m in zip(cells, found)]
    summary = []
    for s in sigma_grid:
        for r in rho_grid:
            vals = [row.minimal_n for row in rows if row.sigma == s and row.rho == r]
            worst = None if any(x is None for x in vals) else max(vals)
            summary.append(ProbeRow(s, r, None, None, worst))
    return rows + summary
