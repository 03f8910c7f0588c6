"""Numerical checks of the moment lemma and the monotonicity arguments built on it."""
from .lemma import (
    ConstantChecks,
    LemmaReport,
    LemmaTerms,
    REPORT_COLUMNS,
    branch_constant,
    f_tau,
    lemma23_check,
    lemma23_rhs,
    lemma_terms,
    proof_constant_checks,
    tau_star,
)
from .profiles import (
    EpsilonResult,
    Profile,
    StepDensity,
    find_epsilon,
    random_profile,
    theta_gap,
    theta_scale,
    window_moment,
)
from .proof_functions import (
    ProofFunctions,
    c1_constant,
    thm_proof_functions,
    zeta_endpoint_bound,
    zeta_universal_bound,
)

__all__ = [
    "ConstantChecks", "LemmaReport", "LemmaTerms", "REPORT_COLUMNS", "branch_constant",
    "f_tau", "lemma23_check", "lemma23_rhs", "lemma_terms", "proof_constant_checks",
    "tau_star", "EpsilonResult", "Profile", "StepDensity", "find_epsilon",
    "random_profile", "theta_gap", "theta_scale", "window_moment", "ProofFunctions",
    "thm_proof_functions", "zeta_universal_bound", "c1_constant", "zeta_endpoint_bound",
]
