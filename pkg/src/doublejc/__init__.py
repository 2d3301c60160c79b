"""Entanglement dynamics of the double Jaynes-Cummings model.

Two atoms A, B each coupled to their own cavity mode a, b.  States live in
the one-excitation-per-pair subspace, evolved in closed form, and analysed
with the wedge-product bipartite measure and pairwise concurrences.
"""
__version__ = "0.1.0"

from .kernels import BACKEND
from .model import (CANONICAL_PARTITIONS, Bipartition, DomainError, FourQubitState,
                    GenericCoefficients, ModelParams, SubsystemParams, embed, make_bell_phi,
                    make_bell_psi, random_coefficients)
from .propagator import (evolve_closed_form, evolve_trajectory, f_amp, g_amp, h_amp,
                         oracle_evolve, subsystem_unitary)
from .entanglement import (ConcurrenceSet, concurrence_wootters, concurrence_x,
                           pairwise_concurrences, reduced_density, wedge_entanglement)
from .invariants import (InvariantReport, drift_check, eberly_combo_phi, eberly_sum_psi,
                         geninv_closed_form, invariant_E)
from .dissipation import (DeathReport, death_revival_scan, jc_to_dissipative_time,
                          sudden_death_onset)

__all__ = [
    "BACKEND", "CANONICAL_PARTITIONS", "Bipartition", "ConcurrenceSet", "DeathReport",
    "DomainError", "FourQubitState", "GenericCoefficients", "InvariantReport", "ModelParams",
    "SubsystemParams", "concurrence_wootters", "concurrence_x", "death_revival_scan",
    "drift_check", "eberly_combo_phi", "eberly_sum_psi", "embed", "evolve_closed_form",
    "evolve_trajectory", "f_amp", "g_amp", "geninv_closed_form", "h_amp", "invariant_E",
    "jc_to_dissipative_time", "make_bell_phi", "make_bell_psi", "oracle_evolve",
    "pairwise_concurrences", "random_coefficients", "reduced_density", "subsystem_unitary",
    "sudden_death_onset", "wedge_entanglement",
]
