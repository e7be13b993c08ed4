"""
qmask: masking quantum information in bipartite correlations.

Hurwitz-Radon families, masker constructions and checks, entanglement and
imaginarity measures, and tools for finite state sets.
"""

from .hurwitz_radon import HRSet, build_hr, kappa, kappa_real, kappa_tilde, verify_hr_relations
from .ic_sets import StateSet, is_informationally_complete, is_weighted_2_design, mub_complete, sic_qubit
from .info_measures import (
    concurrence_pure,
    entropy_of_entanglement,
    masking_entanglement_table,
    robustness_of_imaginarity,
)
from .linalg import BipartiteShape, partial_trace, random_state
from .masking import (
    Masker,
    apply,
    canonical_real_masker,
    counterexample_d2,
    extract_hr,
    magic_basis_masker,
    masker_from_spectrum,
    phase_masker,
    qubit_complex_masker,
    verify_masker,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteShape",
    "HRSet",
    "Masker",
    "StateSet",
    "apply",
    "build_hr",
    "canonical_real_masker",
    "concurrence_pure",
    "counterexample_d2",
    "entropy_of_entanglement",
    "extract_hr",
    "is_informationally_complete",
    "is_weighted_2_design",
    "kappa",
    "kappa_real",
    "kappa_tilde",
    "magic_basis_masker",
    "masker_from_spectrum",
    "masking_entanglement_table",
    "mub_complete",
    "partial_trace",
    "phase_masker",
    "qubit_complex_masker",
    "random_state",
    "robustness_of_imaginarity",
    "sic_qubit",
    "verify_hr_relations",
    "verify_masker",
]
