from copnum.strategies.baseline import (
    FleeingRobber,
    GreedyPursuitCop,
    RandomCop,
    RandomRobber,
    ScriptedRobber,
    StationaryCop,
    StationaryRobber,
)
from copnum.strategies.grid import GridRobber, grid_geometry, grid_radius
from copnum.strategies.hyperbolic import HyperbolicCop, HyperbolicCopParams
from copnum.strategies.lift import LiftThetaCop, lifted_inner_params
from copnum.strategies.optimal import OptimalCop, OptimalRobber
from copnum.strategies.registry import make_strategy
from copnum.strategies.safe_point import SafePointRobber, select_safe_points
from copnum.strategies.theta import ThetaRobber, theta_conditions
from copnum.strategies.transfer import (
    QuasiRetraction,
    TransferCop,
    ladder_edge_quasi_retraction,
    inner_params,
    verify_quasi_retraction,
)

__all__ = [
    "FleeingRobber",
    "GreedyPursuitCop",
    "GridRobber",
    "HyperbolicCop",
    "HyperbolicCopParams",
    "LiftThetaCop",
    "OptimalCop",
    "OptimalRobber",
    "QuasiRetraction",
    "RandomCop",
    "RandomRobber",
    "SafePointRobber",
    "ScriptedRobber",
    "StationaryCop",
    "StationaryRobber",
    "ThetaRobber",
    "TransferCop",
    "ladder_edge_quasi_retraction",
    "grid_geometry",
    "grid_radius",
    "inner_params",
    "lifted_inner_params",
    "make_strategy",
    "select_safe_points",
    "theta_conditions",
    "verify_quasi_retraction",
]
