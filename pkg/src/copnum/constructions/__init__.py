from copnum.constructions.descriptor import family_names, generate
from copnum.constructions.families import (
    complete,
    cycle,
    farey_ball,
    gamma2_patch,
    grid_patch,
    path,
    petersen,
    random_connected_graph,
    random_tree,
    regular_tree,
    torus_grid,
    triangle_ladder,
)
from copnum.constructions.products import ProductResult, product, rips_graph, wedge_sum
from copnum.constructions.theta import (
    ThetaExtensionAnnotations,
    ThetaNMAnnotations,
    recover_theta_extension,
    recover_theta_nm,
    theta_extension,
    theta_nm,
)
from copnum.constructions.tiling import hyperbolic_tiling_patch

__all__ = [
    "ProductResult",
    "ThetaExtensionAnnotations",
    "ThetaNMAnnotations",
    "complete",
    "cycle",
    "family_names",
    "farey_ball",
    "gamma2_patch",
    "generate",
    "grid_patch",
    "hyperbolic_tiling_patch",
    "path",
    "petersen",
    "product",
    "random_connected_graph",
    "random_tree",
    "recover_theta_extension",
    "recover_theta_nm",
    "regular_tree",
    "rips_graph",
    "theta_extension",
    "theta_nm",
    "torus_grid",
    "triangle_ladder",
    "wedge_sum",
]
