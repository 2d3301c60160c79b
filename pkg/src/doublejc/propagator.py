"""Evolution under U_A (x) U_B.

Two independent routes are provided:

* the closed form built from the amplitudes f, g and h (``evolve_closed_form``,
  ``evolve_trajectory``), and
* a brute-force oracle that builds the 3x3 JC Hamiltonian of each pair and
  exponentiates it by Hermitian eigendecomposition (``oracle_evolve``).

Global phases are kept everywhere.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .model import DomainError, GenericCoefficients, ModelParams, SubsystemParams


def _check_time(t):
    if np.any(np.asarray(t) < 0):
        raise DomainError("time must be non-negative")


def f_amp(p: SubsystemParams, t: float) -> complex:
    """Amplitude that |up,0> stays in |up,0>."""
    _check_time(t)
    return complex(kernels.subsystem_amplitudes(p.nu, p.omega, p.g, t)[0])


def g_amp(p: SubsystemParams, t: float) -> complex:
    """Amplitude for the excitation to move between atom and field."""
    _check_time(t)
    return complex(kernels.subsystem_amplitudes(p.nu, p.omega, p.g, t)[1])


def f_bar_amp(p: SubsystemParams, t: float) -> complex:
    """Amplitude that |down,1> stays in |down,1> (detuning sign flipped)."""
    _check_time(t)
    return complex(kernels.subsystem_amplitudes(p.nu, p.omega, p.g, t)[2])


def h_amp(p: SubsystemParams, t: float) -> complex:
    """Phase picked up by the ground state |down,0>."""
    _check_time(t)
    return complex(kernels.subsystem_amplitudes(p.nu, p.omega, p.g, t)[3])


def subsystem_unitary(p: SubsystemParams, t: float) -> np.ndarray:
    """3x3 propagator over the ordered basis (|up,0>, |down,1>, |down,0>).

    >>> u = subsystem_unitary(SubsystemParams(1.0, 1.0, 1.0), 0.0)
    >>> bool(np.allclose(u, np.eye(3)))
    True
    """
    _check_time(t)
    return kernels.subsystem_unitaries(p.nu, p.omega, p.g, t)[0]


def evolve_trajectory(coeffs: GenericCoefficients, params: ModelParams, times) -> np.ndarray:
    """Closed-form c1..d4 at every time in ``times``; shape (len(times), 9)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    _check_time(times)
    return kernels.trajectory(coeffs.as_array(), params.as_tuple(), times)


def evolve_closed_form(coeffs: GenericCoefficients, params: ModelParams,
                       t: float) -> GenericCoefficients:
    return GenericCoefficients.from_array(evolve_trajectory(coeffs, params, [t])[0])


def subsystem_hamiltonian(p: SubsystemParams) -> np.ndarray:
    """JC Hamiltonian of one pair restricted to (|up,0>, |down,1>, |down,0>).

    Zero-point term nu/2 included; H = nu (n + 1/2) + omega sigma_z / 2 + g (a^dag sigma_- + h.c.).
    """
    return np.array(
        [
            [p.nu / 2 + p.omega / 2, p.g, 0],
            [p.g, 3 * p.nu / 2 - p.omega / 2, 0],
            [0, 0, p.nu / 2 - p.omega / 2],
        ],
        dtype=complex,
    )


def oracle_unitary(p: SubsystemParams, t: float) -> np.ndarray:
    """exp(-i H t) via numpy's Hermitian eigensolver."""
    _check_time(t)
    if t == 0:
        return np.eye(3, dtype=complex)
    w, v = np.linalg.eigh(subsystem_hamiltonian(p))
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def oracle_evolve(coeffs: GenericCoefficients, params: ModelParams,
                  t: float) -> GenericCoefficients:
    ua = oracle_unitary(params.sub_a, t)
    ub = oracle_unitary(params.sub_b, t)
    # the 9 slots fill the whole 3x3 matrix, so U_A (x) U_B acts as M -> U_A M U_B^T
    m = ua @ coeffs.as_matrix() @ ub.T
    return GenericCoefficients.from_matrix(m)


def excitation_numbers(coeffs: GenericCoefficients) -> tuple[float, float]:
    """<N_A>, <N_B> where N_k = a_k^dag a_k + (1 + sigma_z^k)/2."""
    m = coeffs.as_matrix()
    weight = np.abs(m) ** 2
    # qutrit slots 0 and 1 carry one excitation, slot 2 none
    return float(weight[:2, :].sum()), float(weight[:, :2].sum())
