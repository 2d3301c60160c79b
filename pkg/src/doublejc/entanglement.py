"""Bipartite entanglement of pure four-qubit states.

The wedge-product measure of a bipartition P1|P2 projects the state onto
each basis ket |m> of P1, giving unnormalised vectors psi_m = <m|psi>, and
sums the squared areas (2x2 Gram determinants) spanned by every pair:

    E = 1/2 sum_{m,l} (<psi_m|psi_m><psi_l|psi_l> - |<psi_m|psi_l>|^2)

Pairwise concurrences are computed from two-qubit reduced density matrices,
using the closed X-state formula when the matrix has X shape and Wootters'
spin-flip construction otherwise.
"""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from . import kernels
from .model import Bipartition, DomainError, FourQubitState

X_TOL = 1e-10
EIG_CLIP = -1e-10

_X_MASK = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)
_YY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]).real

# (name, labels) for the six atom/field pairs
PAIRS = (
    ("c_AB", "AB"),
    ("c_Aa", "Aa"),
    ("c_Bb", "Bb"),
    ("c_ab", "ab"),
    ("c_Ab", "Ab"),
    ("c_Ba", "Ba"),
)


@dataclass(frozen=True)
class ConcurrenceSet:
    c_AB: float
    c_Aa: float
    c_Bb: float
    c_ab: float
    c_Ab: float
    c_Ba: float

    @classmethod
    def zeros(cls) -> "ConcurrenceSet":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


def _as_partition(part) -> Bipartition:
    return part if isinstance(part, Bipartition) else Bipartition.of(part)


def _split(amp: np.ndarray, part: Bipartition) -> np.ndarray:
    """Reshape (..., 16) amplitudes into (..., 2**|P1|, 2**|P2|)."""
    lead = amp.shape[:-1]
    axes1, axes2 = part.axes(1), part.axes(2)
    n = len(lead)
    t = amp.reshape(lead + (2, 2, 2, 2))
    t = np.transpose(t, tuple(range(n)) + tuple(n + a for a in axes1 + axes2))
    return t.reshape(lead + (2 ** len(axes1), 2 ** len(axes2)))


def reduced_density(state: FourQubitState, keep) -> np.ndarray:
    """Partial trace over every subsystem not in ``keep``.

    ``keep`` is a :class:`Bipartition` (its ``p1`` is kept) or a label
    string such as ``"AB"``.  Kept subsystems appear in (A, B, a, b) order.
    """
    part = _as_partition(keep)
    psi = _split(state.amp, part)
    return psi @ psi.conj().T


def wedge_entanglement(state: FourQubitState, part) -> float:
    part = _as_partition(part)
    return float(kernels.wedge_batch(_split(state.amp, part)[None])[0])


def wedge_entanglement_batch(amps: np.ndarray, part) -> np.ndarray:
    """Vectorised :func:`wedge_entanglement` over (K, 16) amplitudes."""
    part = _as_partition(part)
    return kernels.wedge_batch(_split(np.asarray(amps, dtype=complex), part))


def is_x_form(rho: np.ndarray, tol: float = X_TOL) -> bool:
    return bool(np.all(np.abs(rho[~_X_MASK]) < tol))


def _check_two_qubit(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got {rho.shape}")
    return rho


def x_branch(rho: np.ndarray) -> float:
    """Signed argument of the X-state concurrence before clamping at zero.

    max(|rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)); the
    concurrence is twice its positive part.
    """
    d = np.clip(np.real(np.diagonal(rho)), 0.0, None)
    return max(abs(rho[0, 3]) - np.sqrt(d[1] * d[2]),
               abs(rho[1, 2]) - np.sqrt(d[0] * d[3]))


def concurrence_x(rho: np.ndarray) -> float:
    rho = _check_two_qubit(rho)
    if not is_x_form(rho):
        raise DomainError("matrix is not of X form; use concurrence_wootters")
    return 2.0 * max(0.0, x_branch(rho))


def wootters_lambdas(rho: np.ndarray) -> np.ndarray:
    """Decreasing square roots of the eigenvalues of rho * rho_tilde.

    With rho = A A^dag these are the singular values of B = A^T (Y x Y) A.
    They are read off as the positive eigenvalues of the Hermitian dilation
    [[0, B], [B^dag, 0]], which keeps small values accurate to rounding
    instead of to its square root.
    """
    w, v = kernels.jacobi_eigh(rho)
    if w.min() < EIG_CLIP:
        raise DomainError(f"density matrix has eigenvalue {w.min():.3e} < {EIG_CLIP}")
    a = v * np.sqrt(np.clip(w, 0.0, None))
    b = a.T @ _YY @ a
    dil = np.zeros((8, 8), dtype=complex)
    dil[:4, 4:] = b
    dil[4:, :4] = b.conj().T
    sv = kernels.jacobi_eigh(dil)[0][4:]
    return np.clip(sv[::-1], 0.0, None)


def concurrence_wootters(rho: np.ndarray) -> float:
    lam = wootters_lambdas(_check_two_qubit(rho))
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence(rho: np.ndarray) -> float:
    """X fast path when applicable, Wootters otherwise."""
    rho = _check_two_qubit(rho)
    if is_x_form(rho):
        return concurrence_x(rho)
    return concurrence_wootters(rho)


def pairwise_concurrences(state: FourQubitState) -> ConcurrenceSet:
    return ConcurrenceSet(*(concurrence(reduced_density(state, pair)) for _, pair in PAIRS))


def all_wedges(state: FourQubitState, partitions) -> list[float]:
    return [wedge_entanglement(state, p) for p in partitions]

