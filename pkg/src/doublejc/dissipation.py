"""Dissipative reading of the JC dynamics and sudden-death location.

While 0 <= Omega t < pi/2 on resonance the cavity acts as a decay channel
for the atom.  Matching exp(-gamma t') = cos^2(Omega t) maps the JC clock t
onto the decay clock t'; a zero of the atomic concurrence at finite t is
then a zero at finite t'.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .entanglement import is_x_form, reduced_density, wootters_lambdas, x_branch
from .model import DomainError, GenericCoefficients, ModelParams, embed
from .propagator import evolve_closed_form, evolve_trajectory

# below this the atomic pair counts as disentangled
DEAD_TOL = 1e-14


def jc_to_dissipative_time(t: float, omega_rabi: float, gamma: float) -> float:
    """t' = ln(1 / cos^2(Omega t)) / gamma on the window 0 <= Omega t < pi/2."""
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    x = omega_rabi * t
    if x < 0 or x >= math.pi / 2:
        raise DomainError(f"Omega t = {x} outside [0, pi/2); t' diverges at pi/2")
    return math.log(1.0 / math.cos(x) ** 2) / gamma


def sudden_death_onset(alpha: float, omega_rabi: float) -> float | None:
    """First zero of C_AB for Phi(alpha) with identical resonant pairs.

    The atoms disentangle once sin^2(Omega t) exceeds tan(alpha), which only
    happens before Omega t = pi/2 if tan(alpha) < 1.
    """
    if not 0.0 <= alpha <= math.pi / 2:
        raise DomainError(f"alpha must lie in [0, pi/2], got {alpha}")
    if omega_rabi <= 0:
        raise DomainError(f"Rabi frequency must be positive, got {omega_rabi}")
    # tan(alpha) < 1 decided on the angle itself: tan(pi/4) rounds below 1
    if alpha >= math.pi / 4:
        return None
    return math.asin(math.sqrt(math.tan(alpha))) / omega_rabi


def atomic_entanglement_margin(coeffs: GenericCoefficients) -> float:
    """Signed quantity whose positive part is C_AB / 2.

    X-form reduced states use the pre-clamp X expression; otherwise the
    Wootters combination (lambda1 - lambda2 - lambda3 - lambda4) / 2.
    """
    rho = reduced_density(embed(coeffs), "AB")
    if is_x_form(rho):
        return float(x_branch(rho))
    lam = wootters_lambdas(rho)
    return float(lam[0] - lam[1] - lam[2] - lam[3]) / 2


@dataclass(frozen=True)
class DeathReport:
    death_times: list = field(default_factory=list)
    revival_times: list = field(default_factory=list)
    death_times_dissipative: list = field(default_factory=list)
    gamma: float = 1.0


def death_revival_scan(coeffs: GenericCoefficients, params: ModelParams, t_max: float,
                       n_samples: int = 1000, gamma: float = 1.0) -> DeathReport:
    """Locate every death and revival of C_AB on [0, t_max].

    Sign changes of :func:`atomic_entanglement_margin` on a uniform grid are
    refined by bisection to 1e-10 / Omega_A.
    """
    if n_samples < 100:
        raise DomainError("n_samples must be at least 100")
    if t_max <= 0:
        raise DomainError("t_max must be positive")
    times = np.linspace(0.0, t_max, n_samples)
    traj = evolve_trajectory(coeffs, params, times)
    margin = np.array([atomic_entanglement_margin(GenericCoefficients.from_array(row))
                       for row in traj])
    alive = margin >= -DEAD_TOL

    def shifted(t):
        return atomic_entanglement_margin(evolve_closed_form(coeffs, params, t)) + DEAD_TOL

    rabi_a = params.sub_a.rabi or 1.0
    xtol = 1e-10 / rabi_a
    deaths, revivals = [], []
    for i in np.flatnonzero(alive[:-1] != alive[1:]):
        root = bisect(shifted, times[i], times[i + 1], xtol=xtol)
        (deaths if alive[i] else revivals).append(float(root))

    window = math.pi / (2 * rabi_a)
    dissipative = [jc_to_dissipative_time(t, rabi_a, gamma) for t in deaths if t < window]
    return DeathReport(deaths, revivals, dissipative, gamma)
