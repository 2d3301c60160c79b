"""Conserved quantities along double-JC trajectories."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import (ConcurrenceSet, pairwise_concurrences, wedge_entanglement,
                           wedge_entanglement_batch)
from .model import (Bipartition, DomainError, FourQubitState, GenericCoefficients, ModelParams,
                    embed, embed_array)
from .propagator import evolve_trajectory

AA_BB = Bipartition.of("Aa")

QUANTITIES = ("invariant_E", "geninv", "eberly_psi", "eberly_phi")


@dataclass(frozen=True)
class InvariantReport:
    quantity: str
    initial_value: float
    max_abs_drift: float
    sample_times: list
    per_time_values: list

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "initial_value": self.initial_value,
            "max_abs_drift": self.max_abs_drift,
            "n_samples": len(self.sample_times),
        }


def invariant_E(state: FourQubitState) -> float:
    """Entanglement between the atom-cavity systems Aa and Bb."""
    return wedge_entanglement(state, AA_BB)


def _minor_sum(c1, c2, c3, c4, c5, d1, d2, d3, d4):
    return (abs(c1 * c4 - c2 * c3) ** 2 + abs(c1 * d3 - c2 * d1) ** 2
            + abs(c3 * d3 - c4 * d1) ** 2 + abs(c1 * d4 - c3 * d2) ** 2
            + abs(c2 * d4 - c4 * d2) ** 2 + abs(c1 * c5 - d1 * d2) ** 2
            + abs(c2 * c5 - d2 * d3) ** 2 + abs(c3 * c5 - d1 * d4) ** 2
            + abs(c4 * c5 - d3 * d4) ** 2)


def geninv_closed_form(coeffs: GenericCoefficients) -> float:
    """Nine-term closed form of E_{Aa-Bb} for a state in the qutrit subspace."""
    return float(_minor_sum(*coeffs.as_array()))


def eberly_sum_psi(cs: ConcurrenceSet) -> float:
    return cs.c_AB + cs.c_ab


def eberly_combo_phi(cs: ConcurrenceSet, alpha: float) -> float:
    """C_AB + C_ab + (C_Aa + C_Bb)|tan alpha| - (C_Ab + C_Ba)."""
    if abs(math.cos(alpha)) < 1e-12:
        raise DomainError("tan(alpha) diverges at alpha = pi/2")
    return (cs.c_AB + cs.c_ab + (cs.c_Aa + cs.c_Bb) * abs(math.tan(alpha))
            - (cs.c_Ab + cs.c_Ba))


def _trajectory_values(quantity, traj, alpha):
    if quantity == "invariant_E":
        return wedge_entanglement_batch(embed_array(traj), AA_BB)
    if quantity == "geninv":
        return np.real(_minor_sum(*traj.T))
    if quantity in ("eberly_psi", "eberly_phi"):
        if quantity == "eberly_phi" and alpha is None:
            raise DomainError("eberly_phi needs alpha")
        out = []
        for row in traj:
            cs = pairwise_concurrences(embed(GenericCoefficients.from_array(row)))
            out.append(eberly_sum_psi(cs) if quantity == "eberly_psi"
                       else eberly_combo_phi(cs, alpha))
        return np.array(out)
    raise DomainError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def drift_check(coeffs: GenericCoefficients, params: ModelParams, times, quantity: str,
                alpha: float | None = None,
                evolve: Callable | None = None) -> InvariantReport:
    """Evaluate ``quantity`` along the trajectory and report its drift.

    ``evolve(coeffs, params, times) -> (T, 9)`` defaults to the closed form;
    it is swappable so callers can run negative controls.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise DomainError("times must be nonempty")
    if np.any(np.diff(times) < 0):
        raise DomainError("times must be ascending")
    traj = (evolve or evolve_trajectory)(coeffs, params, times)
    values = _trajectory_values(quantity, traj, alpha)
    initial = float(values[0])
    return InvariantReport(
        quantity=quantity,
        initial_value=initial,
        max_abs_drift=float(np.max(np.abs(values - initial))),
        sample_times=times.tolist(),
        per_time_values=values.tolist(),
    )
