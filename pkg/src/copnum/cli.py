"""Command-line entry point.

Exit codes: 0 success, 2 invalid input or usage error, 3 resource limit,
4 strategy fault.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from copnum import __version__
from copnum.errors import CopNumError, InvalidInput, ResourceLimit, StrategyFault
from copnum.graph import DistanceMatrix, Graph

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RESOURCE = 3
EXIT_STRATEGY = 4

PROBE_FORMAT = "copnum-probe/1"
GROWTH_FORMAT = "copnum-growth/1"


def exit_code(exc: CopNumError) -> int:
    if isinstance(exc, StrategyFault):
        return EXIT_STRATEGY
    if isinstance(exc, ResourceLimit):
        return EXIT_RESOURCE
    return EXIT_INVALID


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _config(args: argparse.Namespace) -> dict:
    """The run configuration echoed into every artifact."""
    skip = {"func", "output"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["version"] = __version__
    return cfg


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(spec: str) -> Graph:
    """A graph JSON file, or a family descriptor such as ``grid:80x80``."""
    from copnum.constructions import generate
    from copnum.graphio import load_graph

    if Path(spec).is_file():
        return load_graph(spec)
    if spec.endswith(".json"):
        raise InvalidInput(f"graph file {spec} does not exist")
    return generate(spec)


def _int_list(text: str, what: str) -> list[int]:
    """``1,2,5`` or ``1..3`` (inclusive) or a mix of both."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
        except ValueError:
            raise InvalidInput(f"{what} must be integers or ranges like 1..3, got {text!r}") from None
    if not out:
        raise InvalidInput(f"{what} is empty")
    return out


# -- gen ---------------------------------------------------------------------


def cmd_gen(args) -> int:
    from copnum.graphio import graph_to_dict, graph_to_dot

    g = _load_graph(args.descriptor)
    if args.format == "dot":
        _emit(args, f"// config: {json.dumps(_config(args), sort_keys=True)}\n" + graph_to_dot(g))
    else:
        data = graph_to_dict(g)
        data["config"] = _config(args)
        _emit(args, json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
    return EXIT_OK


# -- metrics -----------------------------------------------------------------


def cmd_metrics(args) -> int:
    from copnum import metrics

    g = _load_graph(args.graph)
    out: dict = {"config": _config(args), "metric": args.metric}
    if args.metric == "slim":
        rep = metrics.slim_triangle_constant(g, method=args.method)
        out["delta"] = rep.delta
        if rep.witness is not None:
            w = rep.witness
            out["witness"] = {"vertices": list(w.vertices), "sides": [list(s) for s in w.sides], "far_point": w.far_point}
        else:
            out["witness"] = None
    elif args.metric == "expansion":
        rep = metrics.expansion_profile(g, args.size_cap)
        out.update(min_ratio=str(rep.min_ratio), witness_set=sorted(rep.witness_set), size_cap=rep.size_cap)
    elif args.metric == "growth":
        dm = DistanceMatrix(g)
        v = dm.center() if args.vertex == "center" else int(args.vertex)
        rep = metrics.growth_profile(g, v, args.r_max, dm=dm)
        if args.format == "csv":
            buf = io.StringIO()
            buf.write(f"# {GROWTH_FORMAT} config={json.dumps(_config(args), sort_keys=True)}\n")
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["radius", "alpha", "beta", "valid"])
            for r, (a, b) in enumerate(zip(rep.alpha, rep.beta)):
                w.writerow([r, a, b, int(r <= rep.valid_radius)])
            _emit(args, buf.getvalue())
            return EXIT_OK
        out.update(vertex=v, alpha=list(rep.alpha), beta=list(rep.beta), valid_radius=rep.valid_radius)
        if args.h is not None:
            from fractions import Fraction

            d = max(len(g.neighbors(u)) for u in range(g.n))
            out["lambda"] = metrics.safe_distance_lambda(rep, Fraction(args.h), d, args.rho, args.cops)
            out["lambda_inputs"] = {"h": args.h, "d": d, "rho": args.rho, "n": args.cops}
    elif args.metric == "distortion":
        removed = _int_list(args.delete, "--delete") if args.delete else []
        rep = metrics.distortion(g, removed)
        out.update(
            max_ratio=str(rep.max_ratio),
            witness=list(rep.witness) if rep.witness else None,
            components=rep.components,
        )
    elif args.metric == "undistortion":
        out["L"] = metrics.undistortion_constant_bruteforce(g, args.m, args.n)
        out.update(m=args.m, n=args.n)
    _emit(args, _dumps(out))
    return EXIT_OK


# -- solve / probe -----------------------------------------------------------


def cmd_solve(args) -> int:
    from copnum.game import GameParams
    from copnum.solver import decide_copwin

    g = _load_graph(args.graph)
    dm = DistanceMatrix(g)
    params = GameParams.parse(args.params, g, dm)
    dec = decide_copwin(g, params, dm, budget=args.budget, symmetric=args.symmetric)
    out = dec.to_dict()
    if args.no_timing:
        out["millis"] = None
    out["params"] = params.to_dict()
    out["config"] = _config(args)
    _emit(args, _dumps(out))
    return EXIT_OK


def _grid_values(text: str, what: str, dm: DistanceMatrix) -> list[int]:
    if text.strip() in ("diam", "diameter"):
        return [dm.diameter()]
    return _int_list(text, what)


def cmd_probe(args) -> int:
    from copnum.solver import cop_number_probe

    g = _load_graph(args.graph)
    dm = DistanceMatrix(g)
    v = dm.center() if args.v == "center" else int(args.v)
    rows = cop_number_probe(
        g,
        _int_list(args.sigma, "--sigma"),
        _int_list(args.rho, "--rho"),
        _int_list(args.psi, "--psi"),
        _grid_values(args.R, "--R", dm),
        v,
        args.n_max,
        workers=args.workers,
        budget=args.budget,
        symmetric=args.symmetric,
    )
    buf = io.StringIO()
    buf.write(f"# {PROBE_FORMAT} grid-relative evidence only config={json.dumps(_config(args), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma", "rho", "psi", "R", "minimal_n"])
    for row in rows:
        w.writerow(
            [row.sigma, row.rho, "all" if row.psi is None else row.psi, "all" if row.R is None else row.R, row.label(args.n_max)]
        )
    _emit(args, buf.getvalue())
    return EXIT_OK


# -- match / replay ----------------------------------------------------------


def cmd_match(args) -> int:
    from copnum.game import Game, GameParams, play_match
    from copnum.strategies.registry import make_strategy
    from copnum.trace import trace_to_jsonl

    g = _load_graph(args.graph)
    dm = DistanceMatrix(g)
    params = GameParams.parse(args.params, g, dm)
    game = Game(g, params, dm)
    cops = make_strategy(args.cops, "cops", game)
    robber = make_strategy(args.robber, "robber", game)
    trace = play_match(g, params, cops, robber, args.horizon, seed=args.seed, dm=dm, game=game)
    _emit(args, trace_to_jsonl(trace, _config(args)))
    print(f"verdict: {trace.verdict}", file=sys.stderr)
    return EXIT_OK


def cmd_replay(args) -> int:
    from copnum.trace import replay, trace_from_jsonl

    try:
        text = Path(args.trace).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read trace {args.trace}: {exc}") from exc
    trace, config = trace_from_jsonl(text)
    graph_spec = args.graph or config.get("graph")
    if not graph_spec:
        raise InvalidInput("the trace names no graph; pass --graph")
    again = replay(_load_graph(graph_spec), trace)
    _emit(args, _dumps({"config": _config(args), "replayed": True, "verdict": str(again.verdict)}))
    return EXIT_OK


# -- verify-qr ---------------------------------------------------------------


def cmd_verify_qr(args) -> int:
    from copnum.strategies.transfer import QuasiRetraction, ladder_edge_quasi_retraction, verify_quasi_retraction

    if args.qr == "ladder-edge":
        qr = ladder_edge_quasi_retraction()
    else:
        qr = QuasiRetraction.load(args.qr)
    res = verify_quasi_retraction(qr.gamma, qr.delta, qr.f, qr.g, args.c_max, args.d_max)
    out = {
        "config": _config(args),
        "ok": res.ok,
        "C": res.C,
        "D": res.D,
        "witness": list(res.witness) if res.witness else None,
        "detail": res.detail,
        "declared": {"C": qr.C, "D": qr.D},
    }
    _emit(args, _dumps(out))
    return EXIT_OK if res.ok else EXIT_INVALID


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    budget_help = "state budget for the solver arena (default from COPNUM_STATE_BUDGET or 5e6)"
    p = argparse.ArgumentParser(prog="copnum", description="Cops and robbers with speed, reach and a protected ball.")
    p.add_argument("--version", action="version", version=f"copnum {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        return sp

    sp = add("gen", cmd_gen, "generate a graph from a family descriptor")
    sp.add_argument("descriptor", help='e.g. "theta_nm:n=2,m=5" or "grid:80x80"')
    sp.add_argument("--format", choices=("json", "dot"), default="json")

    sp = add("metrics", cmd_metrics, "metric reports for a graph")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--metric", required=True, choices=("slim", "expansion", "growth", "distortion", "undistortion"))
    sp.add_argument("--method", choices=("dag", "enumerate"), default="dag", help="slim: geodesic handling")
    sp.add_argument("--size-cap", type=int, default=6, help="expansion: largest set size")
    sp.add_argument("--vertex", default="center", help="growth: center vertex")
    sp.add_argument("--r-max", type=int, default=6, help="growth: largest radius")
    sp.add_argument("--h", default=None, help="growth: Cheeger lower bound for the safe distance")
    sp.add_argument("--rho", type=int, default=0, help="growth: reach for the safe distance")
    sp.add_argument("--cops", type=int, default=1, help="growth: cop count for the safe distance")
    sp.add_argument("--format", choices=("json", "csv"), default="json", help="growth: output format")
    sp.add_argument("--delete", default="", help="distortion: deleted vertices, e.g. 3,4")
    sp.add_argument("--m", type=int, default=1, help="undistortion: largest deleted set")
    sp.add_argument("--n", type=int, default=1, help="undistortion: most components")

    sp = add("solve", cmd_solve, "decide whether the cops win")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("-p", "--params", required=True, help="n=1,sigma=1,rho=1,psi=8,v=center,R=diam")
    sp.add_argument("--budget", type=int, default=None, help=budget_help)
    sp.add_argument("--symmetric", action="store_true", help="quotient the arena by cop permutations")
    sp.add_argument("--no-timing", action="store_true", help="write millis as null for byte-stable output")

    sp = add("probe", cmd_probe, "least winning cop count over parameter grids")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--sigma", default="1")
    sp.add_argument("--rho", default="0")
    sp.add_argument("--psi", default="1")
    sp.add_argument("--R", default="diam")
    sp.add_argument("--v", default="center")
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--budget", type=int, default=None, help=budget_help)
    sp.add_argument("--symmetric", action="store_true")

    sp = add("match", cmd_match, "play one match and write a JSONL trace")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("-p", "--params", required=True)
    sp.add_argument("--cops", required=True, help="cop strategy, e.g. greedy or hyperbolic:delta=1")
    sp.add_argument("--robber", required=True, help="robber strategy, e.g. grid_robber")
    sp.add_argument("--horizon", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("verify-qr", cmd_verify_qr, "minimal constants of a quasi-retraction file")
    sp.add_argument("qr", help='quasi-retraction JSON, or "ladder-edge" for the built-in triangle-ladder onto edge example')
    sp.add_argument("--c-max", type=int, default=10)
    sp.add_argument("--d-max", type=int, default=10)

    sp = add("replay", cmd_replay, "re-validate a JSONL trace")
    sp.add_argument("trace")
    sp.add_argument("-g", "--graph", default=None, help="defaults to the graph named in the trace header")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # usage errors exit with status 2
    try:
        return args.func(args)
    except CopNumError as exc:
        print(f"copnum: {exc.kind}: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
