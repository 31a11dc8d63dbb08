"""Dense complex linear algebra on finite-dimensional Hilbert spaces.

States, Hermitian operators and density matrices are thin immutable wrappers
around numpy arrays that validate their defining invariants once, at
construction.  All operations are pure functions; everything here is safe to
share across threads.  Units follow the hbar = 1 convention, so generators
and frequencies are dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "StateVector",
    "HermitianOperator",
    "DensityMatrix",
    "tensor",
    "eigh",
    "expectation",
    "commutator",
    "anticommutator",
    "sym_covariance",
]

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
IMAG_TOL = 1e-10


class DimensionMismatchError(ValueError):
    """Operands live on Hilbert spaces of different dimension."""


def _check_dims(*dims: int) -> int:
    first = dims[0]
    for d in dims[1:]:
        if d != first:
            raise DimensionMismatchError(f"dimension mismatch: {dims}")
    return first


def _frozen_array(values, shape_kind: str) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if shape_kind == "vector":
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("expected a non-empty 1-d amplitude array")
    else:
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("expected a non-empty square matrix")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state.  Normalization is enforced at construction."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if arr.size == 0:
            raise ValueError("state vector needs at least one amplitude")
        norm = np.linalg.norm(arr)
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("state vector has zero or non-finite norm")
        arr = arr / norm
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def overlap(self, other: "StateVector") -> complex:
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian matrix; tiny anti-Hermitian drift (< 1e-12) is symmetrized away."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _frozen_array(self.matrix, "matrix")
        drift = np.max(np.abs(mat - mat.conj().T))
        if drift > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (max drift {drift:.3e})")
        sym = 0.5 * (mat + mat.conj().T)
        sym.setflags(write=False)
        object.__setattr__(self, "matrix", sym)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other):
        other_mat = other.matrix if isinstance(other, HermitianOperator) else other
        return self.matrix @ other_mat


@dataclass(frozen=True)
class DensityMatrix:
    """Positive unit-trace Hermitian matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _frozen_array(self.matrix, "matrix")
        drift = np.max(np.abs(mat - mat.conj().T))
        if drift > HERMITICITY_TOL:
            raise ValueError(f"density matrix is not Hermitian (max drift {drift:.3e})")
        sym = 0.5 * (mat + mat.conj().T)
        tr = np.trace(sym)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr:.12g} is not 1")
        min_eig = float(np.linalg.eigvalsh(sym)[0])
        if min_eig < -POSITIVITY_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {min_eig:.3e}")
        sym.setflags(write=False)
        object.__setattr__(self, "matrix", sym)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        return cls(state.projector())

    @cached_property
    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        """Spectral decomposition (ascending eigenvalues, orthonormal columns)."""
        return eigh_matrix(self.matrix)


def tensor(a, b):
    """Kronecker product of two states or two operators.

    Row-major composite indexing: the pair (i, j) maps to index i * dim_b + j.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
        return HermitianOperator(np.kron(a.matrix, b.matrix))
    raise TypeError("tensor expects two StateVectors or two HermitianOperators")


def eigh_matrix(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """np.linalg.eigh with an explicit failure instead of silent garbage."""
    try:
        w, v = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"eigensolver failed to converge: {exc}") from exc
    return w, v


def eigh(op: HermitianOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of op."""
    return eigh_matrix(op.matrix)


def _state_matrix(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.projector()
    if isinstance(state, DensityMatrix):
        return state.matrix
    raise TypeError("state must be a StateVector or DensityMatrix")


def expectation(op: HermitianOperator, state) -> float:
    """<psi|op|psi> or Tr(op rho); the residual imaginary part is checked."""
    if isinstance(state, StateVector):
        _check_dims(op.dim, state.dim)
        value = complex(np.vdot(state.amplitudes, op.matrix @ state.amplitudes))
    elif isinstance(state, DensityMatrix):
        _check_dims(op.dim, state.dim)
        value = complex(np.trace(op.matrix @ state.matrix))
    else:
        raise TypeError("state must be a StateVector or DensityMatrix")
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        raise ArithmeticError(
            f"expectation of a Hermitian operator came out complex: {value}"
        )
    return value.real


def commutator(a: HermitianOperator, b: HermitianOperator) -> np.ndarray:
    """ab - ba (anti-Hermitian, returned as a raw matrix)."""
    _check_dims(a.dim, b.dim)
    return a.matrix @ b.matrix - b.matrix @ a.matrix


def anticommutator(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    """ab + ba; Hermitian for Hermitian inputs (validated at construction)."""
    _check_dims(a.dim, b.dim)
    return HermitianOperator(a.matrix @ b.matrix + b.matrix @ a.matrix)


def sym_covariance(a: HermitianOperator, b: HermitianOperator, state) -> float:
    """Symmetrized covariance (1/2)<{a,b}> - <a><b> on a state or density matrix."""
    half_anti = expectation(anticommutator(a, b), state) / 2.0
    return half_anti - expectation(a, state) * expectation(b, state)
