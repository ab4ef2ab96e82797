"""Consensus dynamics under per-agent planar rotation bias.

Agents running a diffusive consensus update may implement their coupling in
a rotated direction (frame misalignment, sensing bias, or control bias).
This package builds the resulting rotation-weighted Laplacians, analyzes
their spectra and stability regions, predicts consensus points from the
conserved linear functional, and simulates trajectories.
"""

from .errors import (
    EigensolverError,
    InternalConsistencyError,
    PredictionUnavailableError,
    ScenarioError,
)
from .graph import (
    Graph,
    degree,
    degrees,
    is_connected,
    new_undirected,
    scalar_laplacian,
    topology_laplacian,
)
from .laplacian import (
    WeightedLaplacian,
    adjacency,
    build as build_laplacian,
    even_ones,
    odd_ones,
    out_degree,
)
from .predictor import (
    ConsensusPrediction,
    conserved_functional,
    consensus_point,
    mixing_sum,
)
from .rotation import (
    AngleProfile,
    block_rotation,
    normalize_angle,
    rot,
    to_local_frame,
)
from .scenarios import (
    builtin as builtin_scenario,
    builtin_names,
    default_initial,
    parse as parse_scenario,
    parse_angle,
    parse_file as parse_scenario_file,
    serialize as serialize_scenario,
)
from .simulator import (
    Outcome,
    Scenario,
    Trajectory,
    detect_outcome,
    disagreement,
    simulate,
    step_rk4,
    transition_matrix,
)
from .spectrum import (
    GershgorinRegion,
    Spectrum,
    StabilityClass,
    classify,
    common_angle_spectrum,
    eigenvalues,
    gershgorin,
    match_eigenvalues,
    rank,
    three_agent_consensus,
    three_agent_exact,
    two_agent_consensus,
    two_agent_exact,
)
from .verification import PropertyResult, run_suite

__all__ = [
    "AngleProfile",
    "ConsensusPrediction",
    "EigensolverError",
    "GershgorinRegion",
    "Graph",
    "InternalConsistencyError",
    "Outcome",
    "PredictionUnavailableError",
    "PropertyResult",
    "Scenario",
    "ScenarioError",
    "Spectrum",
    "StabilityClass",
    "Trajectory",
    "WeightedLaplacian",
    "adjacency",
    "block_rotation",
    "build_laplacian",
    "builtin_names",
    "builtin_scenario",
    "classify",
    "common_angle_spectrum",
    "conserved_functional",
    "consensus_point",
    "default_initial",
    "degree",
    "degrees",
    "detect_outcome",
    "disagreement",
    "eigenvalues",
    "even_ones",
    "gershgorin",
    "is_connected",
    "match_eigenvalues",
    "mixing_sum",
    "new_undirected",
    "normalize_angle",
    "odd_ones",
    "out_degree",
    "parse_angle",
    "parse_scenario",
    "parse_scenario_file",
    "rank",
    "rot",
    "run_suite",
    "scalar_laplacian",
    "serialize_scenario",
    "simulate",
    "step_rk4",
    "three_agent_consensus",
    "three_agent_exact",
    "to_local_frame",
    "topology_laplacian",
    "transition_matrix",
    "two_agent_consensus",
    "two_agent_exact",
]

__version__ = "0.1.0"
