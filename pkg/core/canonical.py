"""Вещественные жордановы формы RJS и RJA, их сопрягающие матрицы и коммутант формы RJS."""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import scipy.linalg

from core.linalg import E, RealMatrix, as_square, direct_sum, general_eigenvalues, is_orthogonal, rho_embed, rotation
from errors import ConvergenceFailure, NonConstantModulus, NotOrthogonal, NotSemisimple, ReassemblyFailure, Singular
from settings import ANGLE_GAP, TOL_CLUSTER, TOL_EIG, TOL_ORTH, TOL_RANK, TOL_RESIDUAL, TOL_SING


@dataclass(frozen=True)
class RjsSignature:
    modulus: float
    p: int = 0
    q: int = 0
    rotation_blocks: Tuple[Tuple[float, int], ...] = ()

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")
        angles = [theta for theta, _ in self.rotation_blocks]
        if any(not 0 < theta < np.pi for theta in angles) or any(b <= a for a, b in zip(angles, angles[1:])):
            raise ValueError(f"rotation angles must increase strictly inside (0, pi): {angles}")
        if any(m < 1 for _, m in self.rotation_blocks):
            raise ValueError("rotation multiplicities must be positive")
        if self.order < 1:
            raise ValueError("empty signature")

    @property
    def order(self) -> int:
        return self.p + self.q + 2 * sum(m for _, m in self.rotation_blocks)

    @property
    def r(self) -> int:
        return len(self.rotation_blocks)


@dataclass(frozen=True)
class RjaSignature:
    modulus: float
    p: int = 0
    q: int = 0
    k: int = 0
    mixed_blocks: Tuple[Tuple[float, int, int], ...] = ()

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if min(self.p, self.q, self.k) < 0:
            raise ValueError("p, q and k must be non-negative")
        angles = [phi for phi, _, _ in self.mixed_blocks]
        if any(not 0 < phi < np.pi / 2 for phi in angles) or any(b <= a for a, b in zip(angles, angles[1:])):
            raise ValueError(f"mixed angles must increase strictly inside (0, pi/2): {angles}")
        if any(mu < 0 or nu < 0 or mu + nu < 1 for _, mu, nu in self.mixed_blocks):
            raise ValueError("each mixed block needs mu, nu >= 0 and mu + nu >= 1")
        if self.order < 1:
            raise ValueError("empty signature")

    @property
    def order(self) -> int:
        return self.p + self.q + 2 * self.k + 2 * sum(mu + nu for _, mu, nu in self.mixed_blocks)

    @property
    def h(self) -> int:
        return len(self.mixed_blocks)


def omega_matrix(p: int, n: int) -> RealMatrix:
    """Ω_p = I_p ⊕ (−I_{n−p})."""
    return direct_sum([np.eye(p), -np.eye(n - p)])


def lambda_matrix(m: int) -> RealMatrix:
    """Λ_m = E^{⊕m}."""
    return direct_sum([E] * m)


def theta_matrix(theta: float, mu: int, nu: int) -> RealMatrix:
    """Θ_{θ;μ,ν} = E_θ^{⊕μ} ⊕ (−E_θ^{⊕ν})."""
    return direct_sum([rotation(theta)] * mu + [-rotation(theta)] * nu)


def symplectic_form(k: int) -> RealMatrix:
    return np.block([[np.zeros((k, k)), np.eye(k)], [-np.eye(k), np.zeros((k, k))]])


def symplectic_frame(k: int) -> RealMatrix:
    """Перестановочная ортогональная W с Λ_k = W·symplectic_form(k)·Wᵀ."""
    W = np.zeros((2 * k, 2 * k))
    for i in range(k):
        W[2 * i + 1, i] = 1.0
        W[2 * i, k + i] = 1.0
    return W


def stabilizer_residual(K, X) -> float:
    """Относительная невязка условия K·X·Kᵀ = X."""
    X = np.asarray(X)
    return float(np.linalg.norm(K @ X @ K.T - X) / max(np.linalg.norm(X), 1e-300))


def _cluster_eigenvalues(eigenvalues: np.ndarray, tol_cluster: float) -> List[Tuple[complex, int]]:
    scale = max(float(np.max(np.abs(eigenvalues))), 1e-300)
    clusters: List[List[complex]] = []
    for value in eigenvalues:
        for cluster in clusters:
            if abs(value - np.mean(cluster)) <= tol_cluster * scale:
                cluster.append(value)
                break
        else:
            clusters.append([value])
    return [(complex(np.mean(cluster)), len(cluster)) for cluster in clusters]


def _cluster_angles(angles: List[float], gap: float) -> List[Tuple[float, int]]:
    groups: List[List[float]] = []
    for angle in sorted(angles):
        if groups and angle - groups[-1][-1] <= gap:
            groups[-1].append(angle)
        else:
            groups.append([angle])
    return [(float(np.mean(group)), len(group)) for group in groups]


def check_semisimple(
    M: RealMatrix, eigenvalues: np.ndarray, tol_rank: float = TOL_RANK, tol_cluster: float = TOL_CLUSTER
) -> None:
    """Для каждого кластера собственных значений геометрическая кратность должна равняться алгебраической."""
    n = M.shape[0]
    reference = tol_rank * np.linalg.norm(M, 2)
    for center, size in _cluster_eigenvalues(eigenvalues, tol_cluster):
        singular_values = scipy.linalg.svd(M - center * np.eye(n), compute_uv=False)
        nullity = int(np.sum(singular_values <= reference))
        if nullity < size:
            raise NotSemisimple(f"eigenvalue {center:.6g}: algebraic multiplicity {size}, geometric {nullity}")


def _eigenspace(M: RealMatrix, value: complex, size: int) -> np.ndarray:
    """Ортонормированный базис ядра M − value·I (правые сингулярные векторы)."""
    n = M.shape[0]
    shift = value.real if np.iscomplexobj(value) and value.imag == 0 else value
    _, _, Vh = scipy.linalg.svd(M - shift * np.eye(n))
    return Vh[n - size:].conj().T


def _rotation_columns(basis: np.ndarray, conjugate: bool = False) -> np.ndarray:
    # собственный вектор v числа e^{iα} даёт пару (Re v, −Im v), на которой матрица действует как E_α
    sign = 1.0 if conjugate else -1.0
    columns = []
    for v in basis.T:
        columns.append(np.sqrt(2) * v.real)
        columns.append(sign * np.sqrt(2) * v.imag)
    return np.column_stack(columns)


def spectral_signature(
    M,
    tol_eig: float = TOL_EIG,
    tol_rank: float = TOL_RANK,
    tol_cluster: float = TOL_CLUSTER,
    angle_gap: float = ANGLE_GAP,
    tol_sing: float = TOL_SING,
) -> RjsSignature:
    """Сигнатура RJS: модуль, кратности ±|λ| и блоки поворотов."""
    M = as_square(M).astype(float)
    n = M.shape[0]
    sign, log_abs_det = np.linalg.slogdet(M)
    if sign == 0 or np.exp(log_abs_det) <= tol_sing:
        raise Singular("matrix is singular")
    eigenvalues = general_eigenvalues(M)
    check_semisimple(M, eigenvalues, tol_rank, tol_cluster)

    moduli = np.abs(eigenvalues)
    if moduli.max() / moduli.min() - 1 > tol_eig:
        raise NonConstantModulus(f"eigenvalue moduli range over [{moduli.min():.6g}, {moduli.max():.6g}]")

    angles = np.angle(eigenvalues)
    p = int(np.sum(np.abs(angles) <= angle_gap))
    q = int(np.sum(np.abs(angles) >= np.pi - angle_gap))
    upper = [float(a) for a in angles if angle_gap < a < np.pi - angle_gap]
    lower = [float(a) for a in angles if -np.pi + angle_gap < a < -angle_gap]
    if len(upper) != len(lower):
        raise ConvergenceFailure("computed spectrum is not closed under conjugation")
    return RjsSignature(
        modulus=float(np.exp(log_abs_det / n)), p=p, q=q, rotation_blocks=tuple(_cluster_angles(upper, angle_gap))
    )


def rjs_matrix(sig: RjsSignature) -> RealMatrix:
    blocks = [np.eye(sig.p)]
    for theta, m in sig.rotation_blocks:
        blocks.extend([rotation(theta)] * m)
    blocks.append(-np.eye(sig.q))
    return sig.modulus * direct_sum(blocks)


def _reassembly_residual(F: RealMatrix, J: RealMatrix, M: RealMatrix) -> float:
    # F·J·F⁻¹ через решение системы, без явного обращения
    conjugated = np.linalg.solve(F.T, (F @ J).T).T
    return float(np.linalg.norm(conjugated - M))


def rjs_conjugator(M, tol: float = TOL_RESIDUAL, **tolerances) -> Tuple[RealMatrix, RealMatrix]:
    """Возвращает (J_M, F0) с F0·J_M·F0⁻¹ = M."""
    M = as_square(M).astype(float)
    n = M.shape[0]
    sig = spectral_signature(M, **tolerances)
    J = rjs_matrix(sig)
    scale = np.linalg.norm(M)
    if np.linalg.norm(M - J) <= tol * scale:
        logging.debug('matrix is already in RJS form, conjugator is the identity')
        return J, np.eye(n)

    columns = []
    if sig.p:
        columns.append(_eigenspace(M, sig.modulus, sig.p).real)
    for theta, m in sig.rotation_blocks:
        columns.append(_rotation_columns(_eigenspace(M, sig.modulus * np.exp(1j * theta), m)))
    if sig.q:
        columns.append(_eigenspace(M, -sig.modulus, sig.q).real)
    F0 = np.hstack(columns)

    residual = _reassembly_residual(F0, J, M)
    if residual > tol * scale:
        raise ReassemblyFailure(f"RJS reassembly residual {residual:.3e} exceeds {tol * scale:.3e}")
    return J, F0


def rjs_conjugator_normalized(M, tol: float = TOL_RESIDUAL, **tolerances) -> Tuple[RealMatrix, RealMatrix]:
    """Как rjs_conjugator, но дополнительно |det F0| = √|det M|."""
    M = as_square(M).astype(float)
    J, F0 = rjs_conjugator(M, tol=tol, **tolerances)
    _, log_det_F = np.linalg.slogdet(F0)
    _, log_det_M = np.linalg.slogdet(M)
    return J, F0 * np.exp((0.5 * log_det_M - log_det_F) / M.shape[0])


def rja_signature(M, angle_gap: float = ANGLE_GAP, **tolerances) -> RjaSignature:
    """Сигнатура RJA: углы из (π/2, π) сворачиваются в φ = π − θ, угол π/2 уходит в k."""
    sig = spectral_signature(M, angle_gap=angle_gap, **tolerances)
    k = 0
    folded: List[Tuple[float, int, int]] = []
    for theta, m in sig.rotation_blocks:
        if abs(theta - np.pi / 2) <= angle_gap:
            k += m
        elif theta < np.pi / 2:
            folded.append((theta, m, 0))
        else:
            folded.append((np.pi - theta, 0, m))

    mixed: List[List[float]] = []
    for phi, mu, nu in sorted(folded):
        if mixed and phi - mixed[-1][0] <= angle_gap:
            mixed[-1][1] += mu
            mixed[-1][2] += nu
        else:
            mixed.append([phi, mu, nu])
    return RjaSignature(
        modulus=sig.modulus,
        p=sig.p,
        q=sig.q,
        k=k,
        mixed_blocks=tuple((float(phi), int(mu), int(nu)) for phi, mu, nu in mixed),
    )


def rja_matrix(sig: RjaSignature) -> RealMatrix:
    blocks = [np.eye(sig.p), -np.eye(sig.q)]
    for phi, mu, nu in sig.mixed_blocks:
        blocks.extend([rotation(phi)] * mu)
        blocks.extend([-rotation(phi)] * nu)
    blocks.extend([E] * sig.k)
    return sig.modulus * direct_sum(blocks)


def rja_orthogonal_conjugator(
    U, tol_orth: float = TOL_ORTH, tol: float = TOL_RESIDUAL, **tolerances
) -> Tuple[RealMatrix, RealMatrix]:
    """Возвращает (J̃_U, Z) с ортогональной Z и U = Z·J̃_U·Zᵀ."""
    U = as_square(U).astype(float)
    n = U.shape[0]
    if not is_orthogonal(U, tol_orth):
        raise NotOrthogonal(f"‖UᵀU − I‖ = {np.linalg.norm(U.T @ U - np.eye(n)):.3e}")
    sig = rja_signature(U, **tolerances)
    J = rja_matrix(sig)
    if np.linalg.norm(U - J) <= tol:
        logging.debug('orthogonal matrix is already in RJA form')
        return J, np.eye(n)

    columns = []
    if sig.p:
        columns.append(_eigenspace(U, sig.modulus, sig.p).real)
    if sig.q:
        columns.append(_eigenspace(U, -sig.modulus, sig.q).real)
    for phi, mu, nu in sig.mixed_blocks:
        if mu:
            columns.append(_rotation_columns(_eigenspace(U, np.exp(1j * phi), mu)))
        if nu:
            columns.append(_rotation_columns(_eigenspace(U, np.exp(1j * (np.pi - phi)), nu), conjugate=True))
    if sig.k:
        columns.append(_rotation_columns(_eigenspace(U, 1j, sig.k)))
    Z = np.hstack(columns)

    residual = float(np.linalg.norm(Z @ J @ Z.T - U))
    if residual > tol or not is_orthogonal(Z, max(tol_orth, tol)):
        raise ReassemblyFailure(f"RJA reassembly residual {residual:.3e} exceeds {tol:.1e}")
    return J, Z


def commutant_basis(sig: RjsSignature) -> List[RealMatrix]:
    """Базис пространства M_p ⊕ ρ(M_{m_1}(ℂ)) ⊕ … ⊕ M_q матриц, коммутирующих с формой RJS."""
    n = sig.order
    basis: List[RealMatrix] = []

    def embed(block: np.ndarray, offset: int) -> RealMatrix:
        matrix = np.zeros((n, n))
        size = block.shape[0]
        matrix[offset:offset + size, offset:offset + size] = block
        return matrix

    def real_units(size: int, offset: int) -> None:
        for a, b in itertools.product(range(size), repeat=2):
            unit = np.zeros((size, size))
            unit[a, b] = 1.0
            basis.append(embed(unit, offset))

    real_units(sig.p, 0)
    offset = sig.p
    for _, m in sig.rotation_blocks:
        for a, b in itertools.product(range(m), repeat=2):
            for value in (1.0, 1j):
                unit = np.zeros((m, m), dtype=complex)
                unit[a, b] = value
                basis.append(embed(rho_embed(unit), offset))
        offset += 2 * m
    real_units(sig.q, offset)
    return basis
