"""System parameters, basis conventions and state containers.

Four-qubit amplitudes are indexed by the bits (A, B, a, b) in big-endian
order, ``index = 8*A + 4*B + 2*a + b``.  Atoms map excited -> 1, ground -> 0;
fields map photon number directly.

Each atom-cavity pair only ever explores the qutrit span
``(|up,0>, |down,1>, |down,0>)``; a :class:`GenericCoefficients` is therefore
a 3x3 two-qutrit amplitude matrix in disguise (see :meth:`as_matrix`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

NORM_TOL = 1e-12

LABELS = ("A", "B", "a", "b")

# qutrit slot -> (atom bit, field bit)
QUTRIT_BITS = ((1, 0), (0, 1), (0, 0))

# (qutrit of Aa, qutrit of Bb) for c1..c5, d1..d4
COEFF_SLOTS = (
    (0, 0),  # c1 |uu00>
    (1, 0),  # c2 |du10>
    (0, 1),  # c3 |ud01>
    (1, 1),  # c4 |dd11>
    (2, 2),  # c5 |dd00>
    (0, 2),  # d1 |ud00>
    (2, 0),  # d2 |du00>
    (1, 2),  # d3 |dd10>
    (2, 1),  # d4 |dd01>
)
COEFF_NAMES = ("c1", "c2", "c3", "c4", "c5", "d1", "d2", "d3", "d4")


def _four_qubit_index(qa: int, qb: int) -> int:
    atom_a, field_a = QUTRIT_BITS[qa]
    atom_b, field_b = QUTRIT_BITS[qb]
    return 8 * atom_a + 4 * atom_b + 2 * field_a + field_b


EMBED_INDEX = np.array([_four_qubit_index(qa, qb) for qa, qb in COEFF_SLOTS])
_SLOT_ROWS = np.array([s[0] for s in COEFF_SLOTS])
_SLOT_COLS = np.array([s[1] for s in COEFF_SLOTS])


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


@dataclass(frozen=True)
class SubsystemParams:
    """One atom-cavity pair.  Units are rad/time with hbar = 1."""

    nu: float
    omega: float
    g: float

    def __post_init__(self):
        for name in ("nu", "omega", "g"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.g < 0:
            raise DomainError(f"coupling g must be non-negative, got {self.g}")

    @property
    def delta(self) -> float:
        return self.omega - self.nu

    @property
    def rabi(self) -> float:
        return math.hypot(self.g, self.delta / 2)

    @classmethod
    def resonant(cls, g: float, nu: float = 1.0) -> "SubsystemParams":
        return cls(nu=nu, omega=nu, g=g)


@dataclass(frozen=True)
class ModelParams:
    sub_a: SubsystemParams
    sub_b: SubsystemParams

    @classmethod
    def resonant(cls, g_a: float = 1.0, g_b: float = 1.0, nu: float = 1.0) -> "ModelParams":
        return cls(SubsystemParams.resonant(g_a, nu), SubsystemParams.resonant(g_b, nu))

    def as_tuple(self) -> tuple[float, ...]:
        a, b = self.sub_a, self.sub_b
        return (a.nu, a.omega, a.g, b.nu, b.omega, b.g)


@dataclass(frozen=True)
class GenericCoefficients:
    """Amplitudes c1..c5, d1..d4 of the nine in-scope basis kets."""

    c1: complex = 0j
    c2: complex = 0j
    c3: complex = 0j
    c4: complex = 0j
    c5: complex = 0j
    d1: complex = 0j
    d2: complex = 0j
    d3: complex = 0j
    d4: complex = 0j

    def __post_init__(self):
        for name in COEFF_NAMES:
            object.__setattr__(self, name, complex(getattr(self, name)))
        norm2 = sum(abs(getattr(self, n)) ** 2 for n in COEFF_NAMES)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"coefficients not normalized: |psi|^2 = {norm2!r}")

    @classmethod
    def from_array(cls, values: Iterable[complex]) -> "GenericCoefficients":
        values = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                            dtype=complex)
        if values.shape != (9,):
            raise DomainError(f"expected 9 coefficients, got shape {values.shape}")
        return cls(*values.tolist())

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "GenericCoefficients":
        return cls.from_array(np.asarray(m)[_SLOT_ROWS, _SLOT_COLS])

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in COEFF_NAMES], dtype=complex)

    def as_matrix(self) -> np.ndarray:
        """3x3 amplitude matrix, rows = qutrit of Aa, columns = qutrit of Bb."""
        m = np.zeros((3, 3), dtype=complex)
        m[_SLOT_ROWS, _SLOT_COLS] = self.as_array()
        return m


@dataclass(frozen=True, eq=False)
class FourQubitState:
    amp: np.ndarray = field(repr=False)

    def __post_init__(self):
        amp = np.array(self.amp, dtype=complex).reshape(-1)
        if amp.shape != (16,):
            raise DomainError(f"expected 16 amplitudes, got {amp.shape}")
        norm2 = float(np.vdot(amp, amp).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise DomainError(f"state not normalized: |psi|^2 = {norm2!r}")
        amp.setflags(write=False)
        object.__setattr__(self, "amp", amp)

    def tensor(self) -> np.ndarray:
        """Amplitudes as a (2, 2, 2, 2) array with axes (A, B, a, b)."""
        return self.amp.reshape(2, 2, 2, 2)

    def coefficients(self) -> GenericCoefficients:
        """Read back c1..d4; raises if weight lies outside the nine slots."""
        outside = np.delete(self.amp, EMBED_INDEX)
        if np.any(outside != 0):
            raise DomainError("state has weight outside the one-excitation subspace")
        return GenericCoefficients.from_array(self.amp[EMBED_INDEX])


_ORDER = {label: i for i, label in enumerate(LABELS)}


@dataclass(frozen=True)
class Bipartition:
    """Split of {A, B, a, b}; ``p1`` names the first party."""

    p1: frozenset

    def __post_init__(self):
        p1 = frozenset(self.p1)
        if not p1 or not p1 < frozenset(LABELS):
            raise DomainError(f"p1 must be a nonempty proper subset of {LABELS}, got {set(p1)}")
        object.__setattr__(self, "p1", p1)

    @classmethod
    def of(cls, labels: str | Iterable[str]) -> "Bipartition":
        return cls(frozenset(labels))

    @property
    def p2(self) -> frozenset:
        return frozenset(LABELS) - self.p1

    def axes(self, side: int = 1) -> tuple[int, ...]:
        part = self.p1 if side == 1 else self.p2
        return tuple(sorted(_ORDER[x] for x in part))

    @property
    def name(self) -> str:
        def word(part):
            return "".join(sorted(part, key=_ORDER.__getitem__))
        return f"{word(self.p1)}-{word(self.p2)}"

    def __str__(self):
        return self.name


CANONICAL_PARTITIONS = tuple(
    Bipartition.of(p) for p in ("A", "B", "a", "b", "Aa", "Ab", "AB")
)


def _check_angles(alpha: float, beta: float):
    if not 0.0 <= alpha <= math.pi / 2:
        raise DomainError(f"alpha must lie in [0, pi/2], got {alpha}")
    if not 0.0 <= beta <= math.pi:
        raise DomainError(f"beta must lie in [0, pi], got {beta}")


def make_bell_phi(alpha: float, beta: float = 0.0) -> GenericCoefficients:
    """cos(alpha)|uu00> + sin(alpha) e^{i beta}|dd00>."""
    _check_angles(alpha, beta)
    return GenericCoefficients(c1=math.cos(alpha),
                               c5=math.sin(alpha) * complex(math.cos(beta), math.sin(beta)))


def make_bell_psi(alpha: float, beta: float = 0.0) -> GenericCoefficients:
    """cos(alpha)|ud00> + sin(alpha) e^{i beta}|du00>."""
    _check_angles(alpha, beta)
    return GenericCoefficients(d1=math.cos(alpha),
                               d2=math.sin(alpha) * complex(math.cos(beta), math.sin(beta)))


def embed(coeffs: GenericCoefficients) -> FourQubitState:
    amp = np.zeros(16, dtype=complex)
    amp[EMBED_INDEX] = coeffs.as_array()
    return FourQubitState(amp)


def embed_array(values: np.ndarray) -> np.ndarray:
    """Vectorised embedding of (..., 9) coefficient arrays into (..., 16)."""
    values = np.asarray(values, dtype=complex)
    out = np.zeros(values.shape[:-1] + (16,), dtype=complex)
    out[..., EMBED_INDEX] = values
    return out


def random_coefficients(rng: np.random.Generator) -> GenericCoefficients:
    """Uniform on the unit sphere of C^9 (normalised complex Gaussian)."""
    z = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    return GenericCoefficients.from_array(z / np.linalg.norm(z))
