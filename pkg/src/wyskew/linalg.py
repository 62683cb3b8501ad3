"""Validated Hermitian and density-matrix types plus the dense spectral helpers
everything else is built on.

All matrices are dense ``complex128`` numpy arrays. The wrapper types are
immutable: their arrays are flagged read-only and all spectral data of a
:class:`DensityMatrix` is computed eagerly at construction.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path
from typing import Union

import numpy as np

MAX_DIM = 64
HERMITIAN_RTOL = 1e-10
TRACE_ATOL = 1e-10
NEGATIVE_EIG_ATOL = 1e-10
SQRT_RECONSTRUCT_ATOL = 1e-9

# eigenvalues at or below this many ulps (scaled by dim) are numerical zeros
_ZERO_EIG_ULPS = 64


class ValidationError(ValueError):
    """Input matrix or state failed validation."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


MatrixLike = Union[np.ndarray, "HermitianOperator", Sequence]


def as_complex_matrix(m: MatrixLike) -> np.ndarray:
    """Coerce to a finite, square ``complex128`` array (a copy)."""
    if isinstance(m, HermitianOperator):
        return m.matrix.copy()
    if isinstance(m, DensityMatrix):
        return m.matrix.matrix.copy()
    try:
        arr = np.array(m, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"not a numeric matrix: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if arr.shape[0] > MAX_DIM:
        raise ValidationError(f"dimension {arr.shape[0]} exceeds the supported maximum {MAX_DIM}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix contains NaN or Inf entries")
    return arr


def _raw(m) -> np.ndarray:
    if isinstance(m, HermitianOperator):
        return m.matrix
    if isinstance(m, DensityMatrix):
        return m.matrix.matrix
    return as_complex_matrix(m)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class HermitianOperator:
    """An observable: a complex Hermitian matrix.

    Near-Hermitian input (max-entry asymmetry up to ``1e-10 * max(1, ||M||_F)``)
    is accepted and stored symmetrized, so ``matrix == matrix.conj().T`` holds
    exactly afterwards.
    """

    __slots__ = ("matrix",)

    def __init__(self, m: MatrixLike):
        arr = as_complex_matrix(m)
        scale = max(1.0, float(np.linalg.norm(arr)))
        asym = float(np.max(np.abs(arr - arr.conj().T)))
        if asym > HERMITIAN_RTOL * scale:
            raise ValidationError(f"matrix is not Hermitian (max |M - M^dagger| = {asym:.3g})")
        sym = (arr + arr.conj().T) / 2
        # force exact conjugate symmetry despite rounding in the average
        upper = np.triu(sym, 1)
        sym = np.diag(sym.diagonal().real).astype(np.complex128) + upper + upper.conj().T
        self.matrix = _frozen(sym)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix.astype(dtype) if dtype is not None else self.matrix.copy()

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"

    def _check(self, other: HermitianOperator) -> HermitianOperator:
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatchError(f"operator dims differ: {self.dim} vs {other.dim}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return HermitianOperator(self.matrix - other.matrix)

    def __mul__(self, c):
        if isinstance(c, (int, float, np.integer, np.floating)):
            return HermitianOperator(float(c) * self.matrix)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, float, np.integer, np.floating)):
            return HermitianOperator(self.matrix / float(c))
        return NotImplemented

    def __neg__(self):
        return HermitianOperator(-self.matrix)

    def __eq__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    @classmethod
    def zeros(cls, dim: int) -> HermitianOperator:
        return cls(np.zeros((dim, dim)))

    @classmethod
    def identity(cls, dim: int) -> HermitianOperator:
        return cls(np.eye(dim))


def spectral_decompose(h: MatrixLike) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and eigenvectors as the columns of a unitary matrix, so
    that ``V @ diag(w) @ V^dagger`` reconstructs the input.
    """
    if not isinstance(h, HermitianOperator):
        h = HermitianOperator(h)
    try:
        w, v = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"eigensolver failed to converge for a {h.dim}x{h.dim} Hermitian matrix: {exc}"
        ) from exc
    # eigh is ascending; a stable reversal keeps ties in solver order (reversed)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


class DensityMatrix:
    """A quantum state: positive semidefinite Hermitian matrix of unit trace.

    Eigenvalues, eigenvectors and the principal square root are computed once
    at construction. Eigenvalues in ``[-1e-10, 0)`` are treated as rounding
    noise and clamped to zero; anything more negative is rejected. Positive
    eigenvalues indistinguishable from zero at working precision are zeroed
    too, because ``sqrt`` would otherwise blow ``1e-17`` of noise up to ``3e-9``.
    """

    __slots__ = ("matrix", "eigenvalues", "eigenvectors", "sqrt")

    def __init__(self, m: MatrixLike):
        h = m if isinstance(m, HermitianOperator) else HermitianOperator(m)
        tr = float(np.trace(h.matrix).real)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
        w, v = spectral_decompose(h)
        if w[-1] < -NEGATIVE_EIG_ATOL:
            raise ValidationError(f"density matrix has negative eigenvalue {w[-1]:.3g}")
        zero_floor = _ZERO_EIG_ULPS * h.dim * np.finfo(float).eps
        w = np.where(w <= zero_floor, 0.0, np.minimum(w, 1.0))
        root = (v * np.sqrt(w)) @ v.conj().T
        root = HermitianOperator((root + root.conj().T) / 2)
        err = float(np.linalg.norm(root.matrix @ root.matrix - h.matrix))
        if err > SQRT_RECONSTRUCT_ATOL:
            raise ValidationError(f"square root reconstruction error {err:.3g} exceeds tolerance")
        self.matrix = h
        self.eigenvalues = _frozen(w)
        self.eigenvectors = _frozen(v)
        self.sqrt = root

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        return self.matrix.matrix

    def __array__(self, dtype=None, copy=None):
        return self.array.astype(dtype) if dtype is not None else self.array.copy()

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, rank={self.rank})"

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.eigenvalues))

    @property
    def is_pure(self) -> bool:
        return self.rank == 1

    @classmethod
    def from_ket(cls, psi: Iterable[complex]) -> DensityMatrix:
        """Projector onto a state vector (normalized here)."""
        psi = np.asarray(list(psi) if not isinstance(psi, np.ndarray) else psi, dtype=np.complex128).ravel()
        norm = np.linalg.norm(psi)
        if norm == 0 or not np.isfinite(norm):
            raise ValidationError("state vector must be finite and nonzero")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> DensityMatrix:
        return cls(np.eye(dim) / dim)


def psd_sqrt(rho: DensityMatrix) -> HermitianOperator:
    """Principal square root of a density matrix (cached at construction)."""
    return rho.sqrt


def commutator(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """``AB - BA``."""
    a, b = _raw(a), _raw(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"commutator of {a.shape} and {b.shape} matrices")
    return a @ b - b @ a


def frobenius_norm(m: MatrixLike) -> float:
    return float(np.linalg.norm(_raw(m)))


def tensor(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(_raw(a), _raw(b))


def _check_factorization(dim: int, dim_a: int, dim_b: int) -> None:
    if dim_a < 1 or dim_b < 1 or dim_a * dim_b != dim:
        raise DimensionMismatchError(f"cannot factor dimension {dim} as {dim_a} x {dim_b}")


def partial_trace(rho: DensityMatrix, dim_a: int, dim_b: int, keep: str = "first") -> DensityMatrix:
    """Reduce a bipartite state on ``C^dim_a (x) C^dim_b`` to one factor.

    ``keep="first"`` traces out the second subsystem (``Tr_2``), and
    ``keep="second"`` traces out the first.
    """
    _check_factorization(rho.dim, dim_a, dim_b)
    t = rho.array.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "first":
        red = np.einsum("ijkj->ik", t)
    elif keep == "second":
        red = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
    return DensityMatrix(red)


class ObservableSet:
    """Ordered, nonempty tuple of same-dimension observables."""

    __slots__ = ("operators",)

    def __init__(self, operators: Iterable[MatrixLike]):
        ops = tuple(o if isinstance(o, HermitianOperator) else HermitianOperator(o) for o in operators)
        if not ops:
            raise ValidationError("observable set must be nonempty")
        dims = {o.dim for o in ops}
        if len(dims) != 1:
            raise DimensionMismatchError(f"observables have mixed dimensions {sorted(dims)}")
        self.operators = ops

    @property
    def dim(self) -> int:
        return self.operators[0].dim

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self) -> Iterator[HermitianOperator]:
        return iter(self.operators)

    def __getitem__(self, i):
        return self.operators[i]

    def __repr__(self) -> str:
        return f"ObservableSet(n={len(self)}, dim={self.dim})"


# --- JSON matrix files -------------------------------------------------------

def _parse_rows(rows, dim: int, key: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise ValidationError(f"'{key}' must be a list of {dim} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise ValidationError(f"'{key}' row {i} must have {dim} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ValidationError(f"'{key}' row {i} contains a non-numeric entry")
    return np.array(rows, dtype=float)


def parse_matrix_json(text: str) -> np.ndarray:
    """Parse ``{"dim": d, "re": [[...]], "im": [[...]]}``; ``im`` defaults to zeros."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ValidationError("matrix file must hold a JSON object")
    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ValidationError("'dim' must be a positive integer")
    if dim > MAX_DIM:
        raise ValidationError(f"dimension {dim} exceeds the supported maximum {MAX_DIM}")
    if "re" not in obj:
        raise ValidationError("missing 're' entry")
    re = _parse_rows(obj["re"], dim, "re")
    im = _parse_rows(obj["im"], dim, "im") if obj.get("im") is not None else np.zeros((dim, dim))
    return as_complex_matrix(re + 1j * im)


def load_matrix(path: str | Path) -> np.ndarray:
    return parse_matrix_json(Path(path).read_text(encoding="utf-8"))


def dump_matrix_json(m: MatrixLike) -> str:
    arr = _raw(m)
    obj = {"dim": arr.shape[0], "re": arr.real.tolist()}
    if np.any(arr.imag):
        obj["im"] = arr.imag.tolist()
    return json.dumps(obj)


def save_matrix(path: str | Path, m: MatrixLike) -> None:
    Path(path).write_text(dump_matrix_json(m) + "\n", encoding="utf-8")
