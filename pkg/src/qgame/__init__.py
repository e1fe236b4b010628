"""Quantum 2x2 games: protocol simulation, quadratic-form payoffs and Nash
equilibrium search for two-qubit entangled play."""

from .classical import (
    BimatrixGame,
    ClassicalMixedProfile,
    builtin_game,
    dominant_strategies,
    expected_payoffs,
    mixed_nash_indifference,
    pareto_optimal_profiles,
    pure_nash,
)
from .equilibrium import (
    EquilibriumCertificate,
    FiniteRestrictedGame,
    SearchConfig,
    best_response_dynamics,
    build_restricted_game,
    certify,
    find_equilibria,
    finite_mixed_ne,
)
from .ewl import (
    DiscreteMixedStrategy,
    EntanglerSetting,
    TwoQubitState,
    entangler,
    final_state,
    mixed_payoffs,
    outcome_probs,
    pure_payoffs,
)
from .quadratic import (
    MVectors,
    PayoffQuadraticForm,
    averaged_matrix,
    best_response_pure,
    m_vectors,
    payoff_matrix_A,
    payoff_matrix_B,
)
from .su2 import Su2Element, classical_strategy, dagger, from_angles, from_vector, grid, haar_sample

__version__ = "0.1.0"
