"""JSON-lines trace files and replay.

Line 1 is a header with the parameters, horizon and run config; then one line
per state; the last line holds the verdict.
"""

from __future__ import annotations

import json
from collections.abc import Sequence

from copnum.errors import InvalidInput
from copnum.game import (
    COP_TURN,
    PHASES,
    ROBBER_TURN,
    Game,
    GameParams,
    GameState,
    Strategy,
    Trace,
    Verdict,
    play_match,
)
from copnum.graph import DistanceMatrix, Graph

TRACE_FORMAT = "copnum-trace/1"


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def trace_to_jsonl(trace: Trace, config: dict | None = None) -> str:
    lines = [
        _dumps(
            {
                "type": "header",
                "format": TRACE_FORMAT,
                "params": trace.params.to_dict(),
                "horizon": trace.horizon,
                "config": config or {},
            }
        )
    ]
    lines += [_dumps({"type": "state", **s.to_dict()}) for s in trace.states]
    lines.append(_dumps({"type": "verdict", "kind": trace.verdict.kind, "value": trace.verdict.value}))
    return "\n".join(lines) + "\n"


def trace_from_jsonl(text: str) -> tuple[Trace, dict]:
    """Parse a trace file; returns the trace and its config header."""
    rows = []
    for num, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"trace line {num} is not JSON: {exc}") from exc
    if len(rows) < 3 or rows[0].get("type") != "header" or rows[-1].get("type") != "verdict":
        raise InvalidInput("trace must have a header line, state lines and a verdict line")
    head = rows[0]
    if head.get("format") != TRACE_FORMAT:
        raise InvalidInput(f"unsupported trace format {head.get('format')!r}")
    try:
        params = GameParams(**head["params"])
        states = []
        for row in rows[1:-1]:
            if row.get("type") != "state" or row["phase"] not in PHASES:
                raise InvalidInput(f"bad state line {row}")
            states.append(GameState(tuple(row["cops"]), row["robber"], row["phase"], int(row["stage"])))
        verdict = Verdict(rows[-1]["kind"], int(rows[-1]["value"]))
        trace = Trace(params, int(head["horizon"]), states, verdict)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed trace: {exc}") from exc
    return trace, head.get("config", {})


class _Scripted(Strategy):
    """Plays back recorded moves."""

    def __init__(self, side: str, states: Sequence[GameState]):
        self.side = side
        self.states = states

    def place(self, game, state):
        if self.side == "cops":
            return self.states[0].cops
        return self.states[1].robber

    def move(self, game, history):
        if len(history) >= len(self.states):
            raise InvalidInput("trace ends before its verdict")
        nxt = self.states[len(history)]
        return nxt.cops if self.side == "cops" else nxt.robber


def replay(g: Graph, trace: Trace, dm: DistanceMatrix | None = None) -> Trace:
    """Re-run the engine over the recorded moves.

    Raises StrategyFault on an illegal recorded move and InvalidInput if the
    replayed states or verdict differ from the recording.
    """
    states = trace.states
    if len(states) < 2 or states[0].phase != "robber-placement" or states[1].phase != COP_TURN:
        raise InvalidInput("trace does not start with the two placement states")
    for prev, cur in zip(states[1:], states[2:]):
        if prev.phase == COP_TURN and cur.phase not in (ROBBER_TURN, "captured"):
            raise InvalidInput(f"unexpected phase {cur.phase} after {prev.phase}")
    game = Game(g, trace.params, dm)
    again = play_match(
        g,
        trace.params,
        _Scripted("cops", states),
        _Scripted("robber", states),
        trace.horizon,
        game=game,
    )
    if again.states != list(states):
        raise InvalidInput("replayed states differ from the recording")
    if again.verdict != trace.verdict:
        raise InvalidInput(f"replayed verdict {again.verdict} differs from recorded {trace.verdict}")
    return again
