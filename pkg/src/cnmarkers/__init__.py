"""Causal network markers for tipping-point detection in multivariate series.

Sliding-window markers (CNM-GC, CNM-TE, DNB) over directed causal strengths,
benchmark model simulators, and a warning/evaluation pipeline. Hot kernels run
through a compiled extension when available; set CNMARKERS_PURE_PYTHON=1 to
force the pure numpy fallback.
"""

__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import (BoundsError, CnmError, ConfigError, DataError,
                     DegenerateInput, DegenerateNetwork, DivergenceError,
                     EmptyInput, FormatError, InsufficientData, NoFoldError,
                     ParseError, ProjectionError, SingularityError)
from .series import (MultivariateSeries, Window, extract_window, load_csv,
                     moving_average, node_variances, write_csv)
from .causality import (CausalStrength, GcFit, granger_causality, granger_fit,
                        granger_matrix, pearson_correlation,
                        transfer_entropy_binned, transfer_entropy_gaussian)
from .grouping import (NodeGrouping, classify_groups, kmeans_split,
                       parse_grouping_file)
from .markers import (MarkerSeries, SweepPoint, WarningReport, cnm, dnb,
                      detect_warning, evaluate_combined, evaluate_warnings,
                      marker_stream, marker_sweep)
from .models import (GeneticConfig, LinearOracleConfig, MutualisticConfig,
                     SdeSpec, TuringConfig, effective_reduction,
                     euler_maruyama, find_fold, genetic_dominant_eigenvalue,
                     get_model, interaction_matrix, low_branch_state,
                     project_bipartite, random_bipartite_matrix,
                     resilience_beta, resilience_curve, simulate_genetic,
                     simulate_linear_oracle, simulate_mutualistic,
                     simulate_turing, turing_equilibrium)

__all__ = [
    "__version__", "BACKEND",
    "CnmError", "ParseError", "FormatError", "DataError", "ConfigError",
    "BoundsError", "EmptyInput", "InsufficientData", "DegenerateInput",
    "DivergenceError", "SingularityError", "ProjectionError",
    "DegenerateNetwork", "NoFoldError",
    "MultivariateSeries", "Window", "extract_window", "load_csv", "write_csv",
    "node_variances", "moving_average",
    "CausalStrength", "GcFit", "pearson_correlation", "granger_fit",
    "granger_causality", "granger_matrix", "transfer_entropy_binned",
    "transfer_entropy_gaussian",
    "NodeGrouping", "kmeans_split", "classify_groups", "parse_grouping_file",
    "MarkerSeries", "WarningReport", "SweepPoint", "cnm", "dnb",
    "marker_stream", "marker_sweep", "detect_warning", "evaluate_warnings",
    "evaluate_combined",
    "SdeSpec", "euler_maruyama", "GeneticConfig", "simulate_genetic",
    "genetic_dominant_eigenvalue", "MutualisticConfig", "random_bipartite_matrix",
    "interaction_matrix", "project_bipartite", "effective_reduction",
    "resilience_beta", "resilience_curve", "find_fold", "low_branch_state",
    "simulate_mutualistic", "TuringConfig", "turing_equilibrium",
    "simulate_turing", "LinearOracleConfig", "simulate_linear_oracle",
    "get_model",
]
