"""Benchmark system simulators and their configurations."""
from ..errors import ConfigError
from .genetic import (
    GeneticConfig,
    Z_BAR,
    genetic_dominant_eigenvalue,
    genetic_drift,
    simulate_genetic,
)
from .linear import S_FIX, LinearOracleConfig, simulate_linear_oracle
from .mutualistic import (
    MutualisticConfig,
    effective_reduction,
    find_fold,
    interaction_matrix,
    low_branch_state,
    project_bipartite,
    random_bipartite_matrix,
    reduced_drift,
    resilience_beta,
    resilience_curve,
    simulate_mutualistic,
)
from .sde import SdeSpec, euler_maruyama
from .turing import TuringConfig, laplacian5, simulate_turing, turing_equilibrium

MODELS = {
    "genetic": (GeneticConfig, simulate_genetic),
    "mutualistic": (MutualisticConfig, simulate_mutualistic),
    "turing": (TuringConfig, simulate_turing),
    "linear-oracle": (LinearOracleConfig, simulate_linear_oracle),
}


def get_model(name: str):
    """(config class, simulate function) for a model name."""
    try:
        return MODELS[name]
    except KeyError:
        raise ConfigError(
            f"unknown model {name!r}; choose from {', '.join(sorted(MODELS))}") from None
