"""Concrete operators and parameterized state families used in the worked examples."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, ObservableSet, ValidationError

FAMILIES = ("fig1_bloch", "fig2_spin1")

_SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_R2 = 1 / math.sqrt(2)
_J_X = _R2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
_J_Y = _R2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128)
# standard spin-1 J_z; a 1/sqrt(2) prefactor here would break [J_x, J_y] = i J_z
_J_Z = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)


def pauli() -> ObservableSet:
    """``(sigma_1, sigma_2, sigma_3)``."""
    return ObservableSet([_SIGMA_1, _SIGMA_2, _SIGMA_3])


def spin1_J() -> ObservableSet:
    """Spin-1 angular momentum ``(J_x, J_y, J_z)`` with hbar = 1."""
    return ObservableSet([_J_X, _J_Y, _J_Z])


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if not math.isfinite(n) or n > 1 + 1e-12:
            raise ValidationError(f"Bloch vector length {n!r} exceeds 1")

    @property
    def length(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def bloch_state(r) -> DensityMatrix:
    """Qubit state ``(I + r . sigma) / 2``."""
    if not isinstance(r, BlochVector):
        r = BlochVector(*(float(c) for c in r))
    m = 0.5 * (np.eye(2) + r.x * _SIGMA_1 + r.y * _SIGMA_2 + r.z * _SIGMA_3)
    return DensityMatrix(m)


def fig1_bloch_vector(theta: float) -> BlochVector:
    a = math.sqrt(3) / 2
    return BlochVector(a * math.cos(theta), a * math.sin(theta), 0.0)


def spin1_state(theta: float) -> DensityMatrix:
    """Pure spin-1 state ``cos(theta/2)|0> + sin(theta/2)|2>``."""
    return DensityMatrix.from_ket([math.cos(theta / 2), 0.0, math.sin(theta / 2)])


def figure_family(name: str, theta: float) -> tuple[DensityMatrix, ObservableSet]:
    if name == "fig1_bloch":
        return bloch_state(fig1_bloch_vector(theta)), pauli()
    if name == "fig2_spin1":
        return spin1_state(theta), spin1_J()
    raise ValidationError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def bell_states() -> list[DensityMatrix]:
    """Projectors onto ``Phi+, Phi-, Psi+, Psi-`` in the ``|00>, |01>, |10>, |11>`` basis."""
    kets = (
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
        [0, 1, -1, 0],
    )
    return [DensityMatrix.from_ket(k) for k in kets]


def singlet() -> DensityMatrix:
    return bell_states()[3]
