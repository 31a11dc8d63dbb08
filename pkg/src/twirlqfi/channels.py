"""Dephasing channel built from the spectral projectors of a noise generator.

Averaging a state over the one-parameter unitary group exp(-i G t) pins the
state to the eigenspaces of G.  For a generator with a discrete spectrum the
averaged state is the pinching sum_i P_i rho P_i over the eigenspace
projectors P_i.  Degenerate eigenspaces are recovered numerically by greedy
clustering of the sorted eigenvalues with a documented tolerance; that is the
honest floating-point analogue of exact degeneracy.

A finite-time average of exp(-i G t) rho exp(i G t) is provided as an
independent validation oracle: it converges to the pinching as t_max grows
whenever the nonzero eigenvalue gaps of G stay away from zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .hilbert import DensityMatrix, HermitianOperator, _check_dims, eigh

__all__ = [
    "DEFAULT_CLUSTER_TOL",
    "ProjectorSet",
    "cluster_eigenvalues",
    "spectral_projectors",
    "twirl",
    "twirl_hermitian",
    "finite_time_average",
]

# Separates true degeneracies from eigensolver noise at dims up to ~500.
DEFAULT_CLUSTER_TOL = 1e-8


def cluster_eigenvalues(eigenvalues: np.ndarray, cluster_tol: float) -> list[int]:
    """Greedy clustering of ascending eigenvalues.

    Consecutive eigenvalues within cluster_tol * (1 + spectral range) join one
    cluster.  Returns the boundary indices [0, ..., n]; cluster k occupies the
    half-open index range [bounds[k], bounds[k + 1]).
    """
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    w = np.asarray(eigenvalues, dtype=float)
    spread = float(w[-1] - w[0]) if w.size else 0.0
    gap = cluster_tol * (1.0 + spread)
    bounds = [0]
    for i in range(1, w.size):
        if w[i] - w[i - 1] > gap:
            bounds.append(i)
    bounds.append(w.size)
    return bounds


@dataclass(frozen=True)
class ProjectorSet:
    """Complete set of mutually orthogonal eigenspace projectors of a generator.

    Stored compactly as the orthonormal eigenbasis plus cluster boundaries;
    the projector matrices themselves materialize lazily.  `eigenvalues`
    holds one (strictly increasing) representative value per cluster.
    """

    basis: np.ndarray
    bounds: tuple[int, ...]
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        basis = np.array(self.basis, dtype=complex)
        d = basis.shape[0]
        if basis.ndim != 2 or basis.shape[1] != d:
            raise ValueError("basis must be a square matrix of eigenvector columns")
        ortho = np.max(np.abs(basis.conj().T @ basis - np.eye(d)))
        if ortho > 1e-9:
            raise ValueError(f"basis columns are not orthonormal (residual {ortho:.3e})")
        bounds = tuple(int(b) for b in self.bounds)
        if bounds[0] != 0 or bounds[-1] != d or any(
            b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])
        ):
            raise ValueError("cluster bounds must partition the basis columns")
        values = np.array(self.eigenvalues, dtype=float)
        if values.size != len(bounds) - 1:
            raise ValueError("one eigenvalue per cluster is required")
        if np.any(np.diff(values) <= 0):
            raise ValueError("cluster eigenvalues must be strictly increasing")
        basis.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def n_projectors(self) -> int:
        return len(self.bounds) - 1

    def ranks(self) -> tuple[int, ...]:
        return tuple(b2 - b1 for b1, b2 in zip(self.bounds, self.bounds[1:]))

    def cluster_columns(self, i: int) -> np.ndarray:
        """Orthonormal eigenvector columns spanning cluster i."""
        return self.basis[:, self.bounds[i] : self.bounds[i + 1]]

    @cached_property
    def projectors(self) -> list[HermitianOperator]:
        out = []
        for i in range(self.n_projectors):
            cols = self.cluster_columns(i)
            out.append(HermitianOperator(cols @ cols.conj().T))
        return out

    @cached_property
    def _block_mask(self) -> np.ndarray:
        labels = np.empty(self.dim, dtype=int)
        for i in range(self.n_projectors):
            labels[self.bounds[i] : self.bounds[i + 1]] = i
        return (labels[:, None] == labels[None, :]).astype(float)

    def pinch(self, matrix: np.ndarray) -> np.ndarray:
        """sum_i P_i M P_i, evaluated as a block mask in the eigenbasis."""
        _check_dims(self.dim, matrix.shape[0])
        v = self.basis
        rotated = v.conj().T @ matrix @ v
        return v @ (self._block_mask * rotated) @ v.conj().T


def spectral_projectors(
    g: HermitianOperator, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> ProjectorSet:
    """Eigenspace projectors of g, with degeneracy detected by clustering."""
    w, v = eigh(g)
    bounds = cluster_eigenvalues(w, cluster_tol)
    means = np.array([w[b1:b2].mean() for b1, b2 in zip(bounds, bounds[1:])])
    return ProjectorSet(basis=v, bounds=tuple(bounds), eigenvalues=means)


def twirl(rho: DensityMatrix, p: ProjectorSet) -> DensityMatrix:
    """Average rho over the dephasing group: sum_i P_i rho P_i."""
    return DensityMatrix(p.pinch(rho.matrix))


def twirl_hermitian(op: np.ndarray, p: ProjectorSet) -> np.ndarray:
    """Pinch a raw Hermitian matrix (e.g. the derivative of a density matrix)."""
    return p.pinch(np.asarray(op, dtype=complex))


def _trapezoid_phase_factors(delta: np.ndarray, t_max: float, steps: int) -> np.ndarray:
    """Trapezoidal average of exp(-i delta t) on a uniform grid over [0, t_max].

    Evaluated in closed form via the geometric sum, which is identical to the
    literal trapezoid rule up to rounding.  Near-degenerate phases (|z - 1|
    below 1e-9) are flushed to 1; there the true average deviates from 1 by at
    most steps * 1e-9 * t_max / steps, far below oracle tolerances.
    """
    dt = t_max / steps
    z = np.exp(-1j * delta * dt)
    z_end = np.exp(-1j * delta * t_max)
    near_one = np.abs(z - 1.0) < 1e-9
    denom = np.where(near_one, 1.0, z - 1.0)
    middle = (z_end - z) / denom
    factors = (0.5 + 0.5 * z_end + middle) / steps
    return np.where(near_one, 1.0 + 0.0j, factors)


def finite_time_average(
    rho: DensityMatrix, g: HermitianOperator, t_max: float, steps: int
) -> DensityMatrix:
    """Trapezoidal average of exp(-i g t) rho exp(i g t) over [0, t_max].

    `steps` counts trapezoid intervals (steps + 1 grid points).  This is a
    validation oracle, not a production path: it converges to twirl(rho) as
    t_max grows when the nonzero gaps of g are bounded away from zero.
    """
    _check_dims(rho.dim, g.dim)
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    w, v = eigh(g)
    delta = w[:, None] - w[None, :]
    factors = _trapezoid_phase_factors(delta, t_max, steps)
    rotated = v.conj().T @ rho.matrix @ v
    averaged = v @ (factors * rotated) @ v.conj().T
    return DensityMatrix(averaged)
