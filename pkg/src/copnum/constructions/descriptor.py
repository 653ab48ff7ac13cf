"""``generate`` entry point: build a graph from a family descriptor string."""

from __future__ import annotations

import random
import re

from copnum.constructions import families
from copnum.constructions.theta import theta_extension, theta_nm
from copnum.constructions.tiling import hyperbolic_tiling_patch
from copnum.errors import InvalidInput
from copnum.graph import Graph
from copnum.descriptors import parse_descriptor, to_int

# family -> (builder, ordered parameter names)
_FAMILIES = {
    "path": (families.path, ("k",)),
    "cycle": (families.cycle, ("k",)),
    "complete": (families.complete, ("k",)),
    "petersen": (lambda: families.petersen(), ()),
    "regular_tree": (families.regular_tree, ("d", "depth")),
    "grid_patch": (families.grid_patch, ("w", "h")),
    "torus_grid": (families.torus_grid, ("w", "h")),
    "hyperbolic_tiling_patch": (hyperbolic_tiling_patch, ("p", "q", "layers")),
    "farey_ball": (families.farey_ball, ("max_denominator",)),
    "gamma2_patch": (families.gamma2_patch, ("depth",)),
    "triangle_ladder": (families.triangle_ladder, ("ray_length",)),
    "theta_nm": (lambda n, m: theta_nm(n, m)[0], ("n", "m")),
    "random_tree": (lambda n, seed: families.random_tree(n, random.Random(seed)), ("n", "seed")),
}
_ALIASES = {"grid": "grid_patch", "torus": "torus_grid", "tiling": "hyperbolic_tiling_patch", "farey": "farey_ball", "gamma2": "gamma2_patch", "tree": "regular_tree"}


def family_names() -> list[str]:
    return sorted(_FAMILIES) + ["theta_extension"]


def generate(descriptor: str) -> Graph:
    """Build a graph from e.g. ``"theta_nm:n=3,m=5"``, ``"grid:80x80"`` or
    ``"theta_extension:n=2,u0=2,base=path:5"``."""
    name, kwargs, positional = parse_descriptor(descriptor)
    name = _ALIASES.get(name, name)
    if len(positional) == 1 and re.fullmatch(r"\d+x\d+", positional[0]):
        positional = positional[0].split("x")
    if name == "theta_extension":
        if "base" not in kwargs:
            raise InvalidInput("theta_extension needs base=<descriptor> (last)")
        base = generate(kwargs.pop("base"))
        n = to_int(kwargs.get("n", "2"), "n")
        u0 = to_int(kwargs.get("u0", "0"), "u0")
        return theta_extension(base, u0, n)[0]
    if name not in _FAMILIES:
        raise InvalidInput(f"unknown graph family {name!r}; known: {', '.join(family_names())}")
    builder, params = _FAMILIES[name]
    if len(positional) > len(params):
        raise InvalidInput(f"{name} takes at most {len(params)} positional values")
    values = dict(zip(params, positional))
    for k, v in kwargs.items():
        if k not in params:
            raise InvalidInput(f"{name} has no parameter {k!r}; expected {params}")
        values[k] = v
    missing = [p for p in params if p not in values]
    if missing:
        raise InvalidInput(f"{name} is missing parameters {missing}")
    return builder(*(to_int(values[p], p) for p in params))
