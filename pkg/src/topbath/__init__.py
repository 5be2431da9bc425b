"""Two qubits dephased by a single kicked top.

A spin-j top driven into chaos acts on a pair of qubits like a many-body
bath: exact joint evolution, the reduced 4x4 density matrix, and a
perturbative theory built from the top's self-correlations all live here.
"""

from ._version import __version__
from .dynamics import (
    CouplingSpec,
    JointState,
    TopParams,
    build_env_floquet,
    build_interaction_phases,
    evolve,
    step,
)
from .errors import ConfigError, InvariantViolation, NumericalFailure
from .observables import (
    EntanglementReport,
    Rdm4,
    entanglement_report,
    lambda_and_concurrence,
    partial_trace_env,
    purity,
    spin_flip,
)
from .perturbation import (
    DecoherenceSeries,
    FitResult,
    PhenoParams,
    correlation_fn,
    correlation_profile,
    env_series,
    estimate_c0,
    estimate_gamma,
    fit_linear_quadratic,
    perturbative_rdm,
    pheno_early_curvature,
    pheno_f,
    pheno_late_rate,
    pheno_rate,
)
from .scenarios import (
    RunArtifact,
    ScenarioConfig,
    detect_lambda_crossing,
    load_config,
    load_records,
    run_decoherence_scenario,
    run_fn_scenario,
)
from .spin import (
    DenseOperator,
    EnvState,
    SpinBasis,
    build_jpm,
    build_jx,
    build_jy,
    build_jz,
    coherent_state,
    hermitian_eig,
    unitary_exp,
)

__all__ = [
    "__version__",
    "ConfigError", "InvariantViolation", "NumericalFailure",
    "SpinBasis", "DenseOperator", "EnvState",
    "build_jpm", "build_jx", "build_jy", "build_jz", "coherent_state",
    "hermitian_eig", "unitary_exp",
    "TopParams", "CouplingSpec", "JointState",
    "build_env_floquet", "build_interaction_phases", "step", "evolve",
    "Rdm4", "EntanglementReport", "partial_trace_env", "purity",
    "spin_flip", "lambda_and_concurrence", "entanglement_report",
    "DecoherenceSeries", "PhenoParams", "FitResult",
    "env_series", "correlation_fn", "correlation_profile",
    "estimate_c0", "estimate_gamma", "perturbative_rdm",
    "pheno_f", "pheno_rate", "pheno_late_rate", "pheno_early_curvature",
    "fit_linear_quadratic",
    "ScenarioConfig", "RunArtifact", "load_config", "load_records",
    "run_decoherence_scenario", "run_fn_scenario", "detect_lambda_crossing",
]
