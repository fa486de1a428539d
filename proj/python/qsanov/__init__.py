"""Python bindings for the qsanov C++ library."""

from ._core import (
    DomainError,
    NumericError,
    ResourceError,
    SupportError,
    b_e_hat,
    d_hat,
    enumerate_types,
    enumerate_young,
    log_fidelity,
    multiplicity_dim,
    outcome_distribution,
    phi_petz,
    phi_sandwich,
    relative_entropy,
    sample_outcomes,
    solve_s_of_r,
    unitary_dim,
    verify,
)

__all__ = [
    "DomainError",
    "NumericError",
    "ResourceError",
    "SupportError",
    "b_e_hat",
    "d_hat",
    "enumerate_types",
    "enumerate_young",
    "log_fidelity",
    "multiplicity_dim",
    "outcome_distribution",
    "phi_petz",
    "phi_sandwich",
    "relative_entropy",
    "sample_outcomes",
    "solve_s_of_r",
    "unitary_dim",
    "verify",
]
