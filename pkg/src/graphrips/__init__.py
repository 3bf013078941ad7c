"""Vietoris-Rips recovery of metric graphs.

Scale windows from the convexity radius and embedding distortion, Rips and
epsilon-path Rips complexes, and Z/2 Betti numbers as the recovery check.
"""

from .correspondence import Correspondence, distortion as correspondence_distortion, gh_upper_bound, induced_vertex_map, is_simplicial
from .embedded_graph import (
    EmbeddedMetricGraph,
    SampleSet,
    distortion,
    euclidean_position,
    hausdorff_distance,
    hausdorff_sample,
)
from .homology import BettiVector, betti_numbers, connected_components, euler_characteristic
from .metric_graph import (
    GraphPoint,
    MetricGraph,
    circumcenter,
    convexity_radius,
    first_betti,
    geodesic_distance,
    restriction_metric,
    sample_uniform,
)
from .path_metric import EpsilonPath, FiniteMetric, alpha_circumcenter, epsilon_path_witness, path_metric
from .scales import ScaleWindow, alpha_constant, gh_window, h_window, max_feasible_eps, plan_density
from .simplicial import SimplicialComplex, barycentric_subdivision, rips_complex, skeleton

__version__ = "0.1.0"

__all__ = [
    "Correspondence",
    "correspondence_distortion",
    "gh_upper_bound",
    "induced_vertex_map",
    "is_simplicial",
    "EmbeddedMetricGraph",
    "SampleSet",
    "distortion",
    "euclidean_position",
    "hausdorff_distance",
    "hausdorff_sample",
    "BettiVector",
    "betti_numbers",
    "connected_components",
    "euler_characteristic",
    "GraphPoint",
    "MetricGraph",
    "circumcenter",
    "convexity_radius",
    "first_betti",
    "geodesic_distance",
    "restriction_metric",
    "sample_uniform",
    "EpsilonPath",
    "FiniteMetric",
    "alpha_circumcenter",
    "epsilon_path_witness",
    "path_metric",
    "ScaleWindow",
    "alpha_constant",
    "gh_window",
    "h_window",
    "max_feasible_eps",
    "plan_density",
    "SimplicialComplex",
    "barycentric_subdivision",
    "rips_complex",
    "skeleton",
]
