"""Wigner-Yanase skew information, variance, and the basis-summed total Q(rho)."""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .linalg import (
    DensityMatrix,
    DimensionMismatchError,
    HermitianOperator,
    MAX_DIM,
    ValidationError,
    commutator,
)

ORTHONORMAL_ATOL = 1e-10


def _check_dims(rho: DensityMatrix, h: HermitianOperator) -> None:
    if rho.dim != h.dim:
        raise DimensionMismatchError(f"state has dim {rho.dim} but observable has dim {h.dim}")


def _as_observable(h) -> HermitianOperator:
    return h if isinstance(h, HermitianOperator) else HermitianOperator(h)


def skew_information(rho: DensityMatrix, h: HermitianOperator) -> float:
    """Skew information ``I_rho(H) = 1/2 ||[sqrt(rho), H]||_F^2``.

    Equal to ``Tr(rho H^2) - Tr(sqrt(rho) H sqrt(rho) H)``; the norm form is used
    because it can't come out negative from rounding.
    """
    h = _as_observable(h)
    _check_dims(rho, h)
    c = commutator(rho.sqrt, h)
    return 0.5 * float(np.vdot(c, c).real)


def skew_information_trace_form(rho: DensityMatrix, h: HermitianOperator) -> float:
    """``Tr(rho H^2) - Tr(sqrt(rho) H sqrt(rho) H)``, kept as an independent check."""
    h = _as_observable(h)
    _check_dims(rho, h)
    r, s, m = rho.array, rho.sqrt.matrix, h.matrix
    return float(np.trace(r @ m @ m).real - np.trace(s @ m @ s @ m).real)


def variance(rho: DensityMatrix, h: HermitianOperator) -> float:
    """``Tr(rho H^2) - Tr(rho H)^2``, clipped at zero."""
    h = _as_observable(h)
    _check_dims(rho, h)
    r, m = rho.array, h.matrix
    mean = float(np.trace(r @ m).real)
    return max(0.0, float(np.trace(r @ m @ m).real) - mean * mean)


class ObservableBasis:
    """Hilbert-Schmidt orthonormal basis of the n x n Hermitian matrices.

    Holds ``n**2`` operators with ``Tr(H_i H_j) = delta_ij`` (checked to 1e-10).
    """

    __slots__ = ("dim", "operators")

    def __init__(self, operators: Iterable):
        ops = tuple(_as_observable(o) for o in operators)
        if not ops:
            raise ValidationError("basis must be nonempty")
        n = ops[0].dim
        if any(o.dim != n for o in ops):
            raise DimensionMismatchError("basis operators have mixed dimensions")
        if len(ops) != n * n:
            raise ValidationError(f"a basis of {n}x{n} Hermitian matrices needs {n * n} elements, got {len(ops)}")
        stack = np.stack([o.matrix for o in ops]).reshape(len(ops), -1)
        gram = stack.conj() @ stack.T
        resid = float(np.max(np.abs(gram - np.eye(len(ops)))))
        if resid > ORTHONORMAL_ATOL:
            raise ValidationError(f"basis is not orthonormal (Gram residual {resid:.3g})")
        self.dim = n
        self.operators = ops

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __getitem__(self, i):
        return self.operators[i]

    def conjugated(self, u: np.ndarray) -> ObservableBasis:
        """The basis ``{U H_i U^dagger}``; orthonormal for any unitary ``U``."""
        u = np.asarray(u, dtype=np.complex128)
        return ObservableBasis(u @ o.matrix @ u.conj().T for o in self.operators)

    def coefficients(self, x) -> np.ndarray:
        """Real expansion coefficients ``Tr(H_i X)`` of a Hermitian ``X``."""
        x = _as_observable(x).matrix
        return np.array([np.vdot(o.matrix, x).real for o in self.operators])


def gell_mann_basis(n: int) -> ObservableBasis:
    """Generalized Gell-Mann basis plus ``I/sqrt(n)``, all with unit HS norm.

    Order: identity, then for each ``j < k`` the symmetric and antisymmetric
    off-diagonal pair, then the ``n - 1`` diagonal generators. For ``n = 2`` this
    is ``(I, sigma_1, sigma_2, sigma_3) / sqrt(2)``.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 2 <= n <= MAX_DIM:
        raise ValidationError(f"basis dimension must be an integer in [2, {MAX_DIM}], got {n!r}")
    n = int(n)
    ops = [np.eye(n, dtype=np.complex128) / np.sqrt(n)]
    r2 = 1 / np.sqrt(2)
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[j, k] = sym[k, j] = r2
            anti = np.zeros((n, n), dtype=np.complex128)
            anti[j, k], anti[k, j] = -1j * r2, 1j * r2
            ops += [sym, anti]
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        ops.append(np.diag(d / np.sqrt(l * (l + 1))).astype(np.complex128))
    return ObservableBasis(ops)


def q_total(rho: DensityMatrix, basis: ObservableBasis) -> float:
    """``Q(rho)``: sum of skew informations over an orthonormal observable basis."""
    if basis.dim != rho.dim:
        raise DimensionMismatchError(f"basis has dim {basis.dim} but state has dim {rho.dim}")
    return float(sum(skew_information(rho, h) for h in basis))


def q_total_closed_form(rho: DensityMatrix) -> float:
    """Basis-free value of ``Q(rho)``: ``n - (Tr sqrt(rho))**2``.

    Follows from the completeness relation ``sum_i H_i X H_i = Tr(X) I`` of any
    orthonormal Hermitian basis, which gives ``sum_i H_i^2 = n I``.
    """
    tr_root = float(np.sum(np.sqrt(rho.eigenvalues)))
    return rho.dim - tr_root * tr_root
