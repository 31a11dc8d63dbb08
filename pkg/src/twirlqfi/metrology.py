"""Estimation-theoretic quantities for unitary families under dephasing noise.

A Scenario bundles a fiducial state psi0, the encoding generator K (the
parameter lambda enters through exp(-i K lambda)) and the noise generator G
whose eigenspace projectors define the dephasing channel.  The module
computes:

* the quantum Fisher information (QFI) of the clean and dephased state, in
  several algebraically independent forms that must agree,
* the information loss between the two, and the exact no-loss / max-loss
  conditions as executable predicates,
* symmetric logarithmic derivatives (SLDs), optimal projective measurements,
  and the classical Fisher information of arbitrary POVMs.

Derivatives of the state are always analytic (dpsi = -i K psi); finite
differences appear only in tests, as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .channels import (
    DEFAULT_CLUSTER_TOL,
    ProjectorSet,
    cluster_eigenvalues,
    spectral_projectors,
    twirl,
    twirl_hermitian,
)
from .hilbert import (
    DensityMatrix,
    HermitianOperator,
    StateVector,
    _check_dims,
    commutator,
    eigh,
    expectation,
    sym_covariance,
)

__all__ = [
    "EPS_PROBABILITY",
    "DEFAULT_CONDITION_TOL",
    "ConsistencyError",
    "NonCommutingError",
    "Scenario",
    "QfiReport",
    "qfi_pure",
    "qfi_unitary",
    "qfi_twirled_pure",
    "qfi_anticommutator_form",
    "qfi_commuting_form",
    "qfi_covariance_form",
    "qfi_eigenvector_form",
    "qfi_loss",
    "loss_covariance_form",
    "check_no_loss",
    "check_max_loss",
    "no_loss_residual",
    "max_loss_residuals",
    "necessary_conditions",
    "qfi_mixed",
    "sld_mixed",
    "sld_twirled",
    "optimal_povm",
    "classical_fisher",
    "report",
]

# Terms with <psi|P_i|psi> below this floor carry no information (Schwarz
# inequality) and are skipped everywhere.
EPS_PROBABILITY = 1e-12

DEFAULT_CONDITION_TOL = 1e-8

# Cross-formula disagreement beyond this is a bug, not a tolerance issue.
CONSISTENCY_GATE = 1e-6


class ConsistencyError(ArithmeticError):
    """Independent formulas for the same quantity disagreed beyond the gate."""


class NonCommutingError(ValueError):
    """An operation restricted to commuting generators got a non-commuting pair."""


@dataclass(frozen=True)
class Scenario:
    """Fiducial state, encoding generator K, noise generator G and lambda."""

    fiducial: StateVector
    k_generator: HermitianOperator
    g_generator: HermitianOperator
    lam: float = 0.0

    def __post_init__(self) -> None:
        _check_dims(self.fiducial.dim, self.k_generator.dim, self.g_generator.dim)
        if not np.isfinite(self.lam):
            raise ValueError("lambda must be finite")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def dim(self) -> int:
        return self.fiducial.dim

    def with_lambda(self, lam: float) -> "Scenario":
        return Scenario(self.fiducial, self.k_generator, self.g_generator, lam)

    @cached_property
    def _k_eig(self) -> tuple[np.ndarray, np.ndarray]:
        return eigh(self.k_generator)

    @cached_property
    def psi_lambda(self) -> StateVector:
        """exp(-i K lambda) |psi0>."""
        w, v = self._k_eig
        phases = np.exp(-1j * w * self.lam)
        evolved = v @ (phases * (v.conj().T @ self.fiducial.amplitudes))
        norm = np.linalg.norm(evolved)
        if abs(norm - 1.0) > 1e-10:
            raise ArithmeticError(f"evolved state norm drifted to {norm!r}")
        return StateVector(evolved)

    @cached_property
    def dpsi(self) -> np.ndarray:
        """Analytic derivative -i K |psi_lambda> (unnormalized)."""
        return -1j * (self.k_generator.matrix @ self.psi_lambda.amplitudes)

    @cached_property
    def rho_lambda(self) -> DensityMatrix:
        return DensityMatrix.from_state(self.psi_lambda)

    @cached_property
    def drho_lambda(self) -> np.ndarray:
        """Analytic |dpsi><psi| + |psi><dpsi| (Hermitian, traceless)."""
        psi = self.psi_lambda.amplitudes
        return np.outer(self.dpsi, psi.conj()) + np.outer(psi, self.dpsi.conj())


@dataclass(frozen=True)
class QfiReport:
    """Aggregated clean/dephased QFI, loss, and theorem diagnostics."""

    alice_qfi: float
    bob_qfi: float
    loss: float
    no_loss: bool
    max_loss: bool
    cov_gk: float
    mean_commutator: complex

    def __post_init__(self) -> None:
        if abs(self.loss - (self.alice_qfi - self.bob_qfi)) > 1e-9:
            raise ValueError("loss must equal alice_qfi - bob_qfi")
        if not (-1e-9 <= self.loss <= self.alice_qfi + 1e-9):
            raise ValueError(
                f"loss {self.loss!r} violates 0 <= loss <= alice_qfi ({self.alice_qfi!r})"
            )


@dataclass(frozen=True)
class _ClusterData:
    """Per-eigenspace components of psi_lambda and dpsi.

    p[i] = <psi|P_i|psi>, overlap[i] = <psi|P_i|dpsi>,
    dpsi_weight[i] = ||P_i dpsi||^2.
    """

    p: np.ndarray
    overlap: np.ndarray
    dpsi_weight: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return self.p > EPS_PROBABILITY

    @property
    def rank_regular(self) -> bool:
        """True when no zero-probability eigenspace receives derivative weight.

        At such points the rank of the dephased state changes with lambda and
        its QFI (as a mixed-state formula) is genuinely discontinuous.
        """
        return not np.any(~self.support & (self.dpsi_weight > 1e-9))


def _segment_sums(basis: np.ndarray, bounds, psi: np.ndarray, dpsi: np.ndarray) -> _ClusterData:
    a = basis.conj().T @ psi
    b = basis.conj().T @ dpsi
    p, overlap, weight = [], [], []
    for b1, b2 in zip(bounds, bounds[1:]):
        seg_a, seg_b = a[b1:b2], b[b1:b2]
        p.append(float(np.real(np.vdot(seg_a, seg_a))))
        overlap.append(complex(np.vdot(seg_a, seg_b)))
        weight.append(float(np.real(np.vdot(seg_b, seg_b))))
    return _ClusterData(np.array(p), np.array(overlap), np.array(weight))


def _clusters(s: Scenario, p: ProjectorSet) -> _ClusterData:
    _check_dims(s.dim, p.dim)
    return _segment_sums(p.basis, p.bounds, s.psi_lambda.amplitudes, s.dpsi)


def qfi_pure(psi: StateVector, dpsi: np.ndarray) -> float:
    """QFI of a pure unitary family: 4<dpsi|dpsi> - 4|<psi|dpsi>|^2.

    Requires <psi|dpsi> purely imaginary (normalization is differentiable);
    a real part signals a non-unitary family or a buggy derivative.
    """
    dpsi = np.asarray(dpsi, dtype=complex)
    _check_dims(psi.dim, dpsi.size)
    ov = complex(np.vdot(psi.amplitudes, dpsi))
    scale = max(1.0, float(np.linalg.norm(dpsi)))
    if abs(ov.real) > 1e-9 * scale:
        raise ValueError(
            f"<psi|dpsi> = {ov} is not purely imaginary; not a unitary family"
        )
    value = 4.0 * float(np.real(np.vdot(dpsi, dpsi))) - 4.0 * abs(ov) ** 2
    return value


def qfi_unitary(psi0: StateVector, k: HermitianOperator) -> float:
    """QFI of the clean unitary channel: 4 Var(K).  Independent of lambda."""
    k2 = expectation(k, psi0) ** 2
    ksq = float(
        np.real(np.vdot(k.matrix @ psi0.amplitudes, k.matrix @ psi0.amplitudes))
    )
    return 4.0 * (ksq - k2)


def qfi_twirled_pure(s: Scenario, p: ProjectorSet) -> float:
    """QFI of the dephased pure family (projector-overlap form).

    4<dpsi|dpsi> - 4 sum_i Im(<psi|P_i|dpsi>)^2 / <psi|P_i|psi>, skipping
    eigenspaces with probability below the floor.
    """
    data = _clusters(s, p)
    kinetic = 4.0 * float(np.real(np.vdot(s.dpsi, s.dpsi)))
    mask = data.support
    dephasing = 4.0 * float(
        np.sum(np.imag(data.overlap[mask]) ** 2 / data.p[mask])
    )
    return kinetic - dephasing


def qfi_anticommutator_form(s: Scenario, p: ProjectorSet) -> float:
    """Dephased QFI via anticommutators: 4<K^2> - sum_i <{P_i,K}>^2 / p_i."""
    data = _clusters(s, p)
    ksq = float(np.real(np.vdot(s.dpsi, s.dpsi)))
    # <{P_i, K}> = 2 Re <psi|P_i K|psi> and K psi = i dpsi.
    anti = 2.0 * np.real(1j * data.overlap)
    mask = data.support
    return 4.0 * ksq - float(np.sum(anti[mask] ** 2 / data.p[mask]))


def qfi_commuting_form(s: Scenario, p: ProjectorSet) -> float:
    """Dephased QFI for commuting K and G, evaluated on the fiducial state.

    4<K^2> - 4 sum_i <psi0|P_i K|psi0>^2 / <psi0|P_i|psi0>; independent of
    lambda.  Rejects non-commuting generators with NonCommutingError.
    """
    comm_norm = float(np.max(np.abs(commutator(s.k_generator, s.g_generator))))
    if comm_norm > 1e-9:
        raise NonCommutingError(
            f"K and G do not commute (max |[K, G]| = {comm_norm:.3e})"
        )
    psi0 = s.fiducial.amplitudes
    kpsi = s.k_generator.matrix @ psi0
    cluster = _segment_sums(p.basis, p.bounds, psi0, kpsi)
    ksq = float(np.real(np.vdot(kpsi, kpsi)))
    mask = cluster.support
    pk = np.real(cluster.overlap[mask])  # P_i K is Hermitian when [P_i, K] = 0
    return 4.0 * ksq - 4.0 * float(np.sum(pk**2 / cluster.p[mask]))


def qfi_covariance_form(s: Scenario, p: ProjectorSet) -> float:
    """Dephased QFI as 4 Var(K) - 4 sum_i p_i Cov(P_i / p_i, K)^2."""
    data = _clusters(s, p)
    # <psi|dpsi> = -i <K>, so <K> = -Im<psi|dpsi>.
    k_mean = -float(np.imag(np.vdot(s.psi_lambda.amplitudes, s.dpsi)))
    ksq = float(np.real(np.vdot(s.dpsi, s.dpsi)))
    variance = ksq - k_mean**2
    mask = data.support
    cov = np.real(1j * data.overlap[mask]) - data.p[mask] * k_mean  # Cov(P_i, K)
    return 4.0 * variance - 4.0 * float(np.sum(cov**2 / data.p[mask]))


def qfi_eigenvector_form(
    s: Scenario, g: HermitianOperator, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> float:
    """Dephased QFI from raw eigenvectors of G, without projector matrices.

    Per degenerate cluster i, forms the overlap vectors a_i = <v_ij|psi> and
    b_i = <v_ij|dpsi> and evaluates
    4(<dpsi|dpsi> - sum_i Im(<a_i|b_i>)^2 / ||a_i||^2).
    The result does not depend on the basis chosen inside each cluster.
    """
    _check_dims(s.dim, g.dim)
    w, v = eigh(g)
    bounds = cluster_eigenvalues(w, cluster_tol)
    data = _segment_sums(v, bounds, s.psi_lambda.amplitudes, s.dpsi)
    kinetic = float(np.real(np.vdot(s.dpsi, s.dpsi)))
    mask = data.support
    dephasing = float(np.sum(np.imag(data.overlap[mask]) ** 2 / data.p[mask]))
    return 4.0 * (kinetic - dephasing)


def qfi_loss(s: Scenario, p: ProjectorSet) -> float:
    """Information loss 4(sum_i Im(<psi|P_i|dpsi>)^2 / p_i - |<psi|dpsi>|^2)."""
    data = _clusters(s, p)
    mask = data.support
    dephasing = float(np.sum(np.imag(data.overlap[mask]) ** 2 / data.p[mask]))
    ov = complex(np.vdot(s.psi_lambda.amplitudes, s.dpsi))
    return 4.0 * (dephasing - abs(ov) ** 2)


def loss_covariance_form(s: Scenario, p: ProjectorSet) -> float:
    """Information loss as 4 sum_i Cov(P_i, K)^2 / p_i."""
    data = _clusters(s, p)
    k_mean = -float(np.imag(np.vdot(s.psi_lambda.amplitudes, s.dpsi)))
    mask = data.support
    cov = np.real(1j * data.overlap[mask]) - data.p[mask] * k_mean
    return 4.0 * float(np.sum(cov**2 / data.p[mask]))


def no_loss_residual(s: Scenario, p: ProjectorSet) -> float:
    """Largest violation of Im<psi|P_i|dpsi> = c p_i with c = Im<psi|dpsi>."""
    data = _clusters(s, p)
    c = float(np.imag(np.vdot(s.psi_lambda.amplitudes, s.dpsi)))
    mask = data.support
    residuals = np.imag(data.overlap[mask]) - c * data.p[mask]
    return float(np.max(np.abs(residuals), initial=0.0))


def _kernel_basis(support_vectors: np.ndarray) -> np.ndarray:
    """Orthonormal completion of orthonormal columns, by modified Gram-Schmidt.

    Candidates are the standard basis vectors; each is orthogonalized twice
    (re-orthogonalization pass) against the support and the kernel vectors
    accepted so far.
    """
    d, r = support_vectors.shape
    n_kernel = d - r
    kernel = np.zeros((d, n_kernel), dtype=complex)
    count = 0
    for k in range(d):
        if count == n_kernel:
            break
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        for _ in range(2):
            v = v - support_vectors @ (support_vectors.conj().T @ v)
            if count:
                v = v - kernel[:, :count] @ (kernel[:, :count].conj().T @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-7:
            kernel[:, count] = v / norm
            count += 1
    if count != n_kernel:
        raise ArithmeticError("Gram-Schmidt failed to complete the kernel basis")
    return kernel


def max_loss_residuals(s: Scenario, p: ProjectorSet) -> tuple[float, float]:
    """Residuals of the two max-loss clauses.

    Returns (max_i |Re<psi|P_i|dpsi>|, max_j |<phi_j|dpsi>|) where {phi_j} is
    an orthonormal basis of the complement of span{P_i|psi>/sqrt(p_i)}.
    """
    data = _clusters(s, p)
    mask = data.support
    real_residual = float(np.max(np.abs(np.real(data.overlap[mask])), initial=0.0))
    psi = s.psi_lambda.amplitudes
    columns = []
    for i in np.flatnonzero(mask):
        cols = p.cluster_columns(int(i))
        vec = cols @ (cols.conj().T @ psi)
        columns.append(vec / np.sqrt(data.p[i]))
    support = np.column_stack(columns)
    kernel = _kernel_basis(support)
    if kernel.shape[1] == 0:
        kernel_residual = 0.0
    else:
        kernel_residual = float(np.max(np.abs(kernel.conj().T @ s.dpsi)))
    return real_residual, kernel_residual


def check_no_loss(s: Scenario, p: ProjectorSet, tol: float = DEFAULT_CONDITION_TOL) -> bool:
    """Exact no-loss condition of the loss theorem, tested on residual norms."""
    return no_loss_residual(s, p) <= tol


def check_max_loss(s: Scenario, p: ProjectorSet, tol: float = DEFAULT_CONDITION_TOL) -> bool:
    """Exact max-loss condition of the loss theorem, tested on residual norms."""
    real_residual, kernel_residual = max_loss_residuals(s, p)
    return real_residual <= tol and kernel_residual <= tol


def necessary_conditions(s: Scenario, p: ProjectorSet) -> tuple[float, complex]:
    """(Cov(G, K), <[G, K]>) on the evolved state.

    Necessary one-directional implications: no loss forces Cov(G, K) = 0 and
    max loss forces <[G, K]> = 0.  Neither converse holds.
    """
    _check_dims(s.dim, p.dim)
    cov = sym_covariance(s.g_generator, s.k_generator, s.psi_lambda)
    psi = s.psi_lambda.amplitudes
    comm = commutator(s.g_generator, s.k_generator)
    mean_comm = complex(np.vdot(psi, comm @ psi))
    return cov, mean_comm


def _sld_and_qfi_mixed(rho: DensityMatrix, drho: np.ndarray) -> tuple[np.ndarray, float]:
    drho = np.asarray(drho, dtype=complex)
    _check_dims(rho.dim, drho.shape[0])
    herm_drift = float(np.max(np.abs(drho - drho.conj().T)))
    if herm_drift > 1e-9:
        raise ValueError(f"drho is not Hermitian (max drift {herm_drift:.3e})")
    if abs(np.trace(drho)) > 1e-9:
        raise ValueError("drho must be traceless (derivative of a unit-trace family)")
    eigenvalues, basis = rho.eig
    rotated = basis.conj().T @ drho @ basis
    pair_sum = eigenvalues[:, None] + eigenvalues[None, :]
    weights = np.zeros_like(pair_sum)
    mask = pair_sum > EPS_PROBABILITY
    weights[mask] = 2.0 / pair_sum[mask]
    qfi = float(np.sum(weights * np.abs(rotated) ** 2))
    sld = basis @ (weights * rotated) @ basis.conj().T
    return sld, qfi


def _verify_sld(rho: DensityMatrix, drho: np.ndarray, sld: np.ndarray, qfi: float) -> None:
    trace_value = float(np.real(np.trace(drho @ sld)))
    if abs(trace_value - qfi) > 1e-8 * (1.0 + abs(qfi)):
        raise ConsistencyError(
            f"Tr(drho L) = {trace_value!r} disagrees with QFI {qfi!r}"
        )
    eigenvalues, basis = rho.eig
    support = basis[:, eigenvalues > EPS_PROBABILITY]
    residual = 2.0 * drho - sld @ rho.matrix - rho.matrix @ sld
    projected = support.conj().T @ residual @ support
    scale = 1.0 + float(np.max(np.abs(drho)))
    if float(np.max(np.abs(projected), initial=0.0)) > 1e-8 * scale:
        raise ConsistencyError("SLD defining equation violated on the support")


def qfi_mixed(rho: DensityMatrix, drho: np.ndarray) -> float:
    """QFI of a general density-matrix family from its eigendecomposition.

    2 sum_ij |<i|drho|j>|^2 / (p_i + p_j) over pairs with p_i + p_j above the
    floor.  The SLD trace relation and defining equation are verified before
    the value is returned.
    """
    sld, qfi = _sld_and_qfi_mixed(rho, drho)
    _verify_sld(rho, drho, sld, qfi)
    return qfi


def sld_mixed(rho: DensityMatrix, drho: np.ndarray) -> HermitianOperator:
    """Symmetric logarithmic derivative 2 <i|drho|j> / (p_i + p_j) |i><j|."""
    sld, qfi = _sld_and_qfi_mixed(rho, drho)
    _verify_sld(rho, drho, sld, qfi)
    return HermitianOperator(sld)


def sld_twirled(s: Scenario, p: ProjectorSet) -> HermitianOperator:
    """SLD of the dephased pure family, built directly from the projectors.

    L = sum_i |phi_i><psi_i| + |psi_i><phi_i| with psi_i = P_i psi / sqrt(p_i)
    and phi_i = (2 P_i dpsi - <psi_i|dpsi> psi_i) / sqrt(p_i).  The operator
    is extended by zero on the orthogonal complement of the spanned space.
    """
    data = _clusters(s, p)
    psi = s.psi_lambda.amplitudes
    d = s.dim
    sld = np.zeros((d, d), dtype=complex)
    for i in np.flatnonzero(data.support):
        cols = p.cluster_columns(int(i))
        sqrt_p = np.sqrt(data.p[i])
        psi_i = cols @ (cols.conj().T @ psi) / sqrt_p
        proj_dpsi = cols @ (cols.conj().T @ s.dpsi)
        a_i = complex(np.vdot(psi_i, s.dpsi))
        phi_i = (2.0 * proj_dpsi - a_i * psi_i) / sqrt_p
        sld += np.outer(phi_i, psi_i.conj()) + np.outer(psi_i, phi_i.conj())
    return HermitianOperator(sld)


def optimal_povm(
    sld: HermitianOperator, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> list[HermitianOperator]:
    """Complete orthogonal eigenprojectors of the SLD (the optimal measurement)."""
    return spectral_projectors(sld, cluster_tol).projectors


def classical_fisher(
    povm: list[HermitianOperator], rho: DensityMatrix, drho: np.ndarray
) -> float:
    """Classical Fisher information sum_x (Tr O_x drho)^2 / Tr(O_x rho).

    Outcomes with probability below the floor are skipped.  The POVM must be
    positive (within 1e-10) and complete (within 1e-9).
    """
    drho = np.asarray(drho, dtype=complex)
    total = np.zeros((rho.dim, rho.dim), dtype=complex)
    for element in povm:
        _check_dims(element.dim, rho.dim)
        min_eig = float(np.linalg.eigvalsh(element.matrix)[0])
        if min_eig < -1e-10:
            raise ValueError(f"POVM element has negative eigenvalue {min_eig:.3e}")
        total += element.matrix
    if float(np.max(np.abs(total - np.eye(rho.dim)))) > 1e-9:
        raise ValueError("POVM elements do not sum to the identity")
    fisher = 0.0
    for element in povm:
        prob = float(np.real(np.trace(element.matrix @ rho.matrix)))
        if prob <= EPS_PROBABILITY:
            continue
        dprob = float(np.real(np.trace(element.matrix @ drho)))
        fisher += dprob**2 / prob
    return fisher


def _gate(values: dict[str, float], scale: float) -> None:
    spread = max(values.values()) - min(values.values())
    if spread > CONSISTENCY_GATE * max(1.0, scale):
        detail = ", ".join(f"{k}={v!r}" for k, v in values.items())
        raise ConsistencyError(f"QFI formulas disagree beyond the gate: {detail}")


def report(s: Scenario, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> QfiReport:
    """Full diagnostic report for a scenario.

    All independent QFI formulas are evaluated and must agree; a spread above
    the consistency gate raises instead of averaging discrepant numbers.  The
    mixed-state cross-check is skipped at rank-change points of the dephased
    family (a zero-probability eigenspace receiving derivative weight), where
    the mixed-state QFI is genuinely discontinuous.
    """
    p = spectral_projectors(s.g_generator, cluster_tol)
    data = _clusters(s, p)
    alice = qfi_unitary(s.fiducial, s.k_generator)
    alice_check = qfi_pure(s.psi_lambda, s.dpsi)
    _gate({"unitary_variance": alice, "pure_overlap": alice_check}, alice)

    candidates = {
        "projector_overlap": qfi_twirled_pure(s, p),
        "anticommutator": qfi_anticommutator_form(s, p),
        "covariance": qfi_covariance_form(s, p),
        "eigenvector": qfi_eigenvector_form(s, s.g_generator, cluster_tol),
    }
    if data.rank_regular:
        rho_b = twirl(s.rho_lambda, p)
        drho_b = twirl_hermitian(s.drho_lambda, p)
        candidates["mixed_state"] = qfi_mixed(rho_b, drho_b)
    _gate(candidates, alice)
    bob = candidates["projector_overlap"]
    if bob < 0.0:
        if bob < -1e-9:
            raise ConsistencyError(f"dephased QFI came out negative: {bob!r}")
        bob = 0.0
    if alice < 0.0:
        if alice < -1e-9:
            raise ConsistencyError(f"clean QFI came out negative: {alice!r}")
        alice = 0.0

    loss_direct = qfi_loss(s, p)
    loss_cov = loss_covariance_form(s, p)
    _gate(
        {"difference": alice - bob, "direct": loss_direct, "covariance": loss_cov},
        alice,
    )
    cov_gk, mean_comm = necessary_conditions(s, p)
    return QfiReport(
        alice_qfi=alice,
        bob_qfi=bob,
        loss=alice - bob,
        no_loss=check_no_loss(s, p),
        max_loss=check_max_loss(s, p),
        cov_gk=cov_gk,
        mean_commutator=mean_comm,
    )
