"""Spectra of periodic ring chains with rotational vertex coupling."""

from ._ringchain import (
    Band,
    Branch,
    ChainSpec,
    InvalidArgument,
    OverflowGuard,
    SolverError,
    asymptotic_comparison,
    certify,
    check_oracle_equivalence,
    closed_form_value,
    coupling_matrix,
    flat_bands,
    lemma_witnesses,
    negative_bands,
    normalized_determinant,
    positive_bands,
    reduced_dispersion,
    run_cli,
    secular_matrix,
    spectrum_measure,
    vertex_scattering,
)

__all__ = [
    "Band",
    "Branch",
    "ChainSpec",
    "InvalidArgument",
    "OverflowGuard",
    "SolverError",
    "asymptotic_comparison",
    "certify",
    "check_oracle_equivalence",
    "closed_form_value",
    "coupling_matrix",
    "flat_bands",
    "lemma_witnesses",
    "negative_bands",
    "normalized_determinant",
    "positive_bands",
    "reduced_dispersion",
    "run_cli",
    "secular_matrix",
    "spectrum_measure",
    "vertex_scattering",
]
