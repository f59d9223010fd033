"""Плотные матричные примитивы: спектральное разложение, корни, логарифмы, полярное разложение и вложение ρ."""
import logging
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg

from errors import ConvergenceFailure, NonSymmetric, NotInImage, NotPositiveDefinite, Singular
from settings import TOL_ORTH, TOL_PD, TOL_SING, TOL_SYM

RealMatrix = np.ndarray
ComplexMatrix = np.ndarray
SpdPoint = np.ndarray

E = np.array([[0.0, -1.0], [1.0, 0.0]])
I2 = np.eye(2)


def rotation(theta: float) -> RealMatrix:
    """E_θ: поворот плоскости на угол θ."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def symmetrize(X: RealMatrix) -> RealMatrix:
    return (X + X.T) / 2


def as_square(A, name: str = 'matrix') -> RealMatrix:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def check_symmetric(S, tol_sym: float = TOL_SYM) -> RealMatrix:
    S = as_square(S).astype(float)
    if np.linalg.norm(S - S.T) > tol_sym * max(np.linalg.norm(S), 1e-300):
        raise NonSymmetric(f"asymmetry {np.linalg.norm(S - S.T):.3e} exceeds tolerance {tol_sym:.1e}")
    return symmetrize(S)


def sym_eigen(S, tol_sym: float = TOL_SYM) -> Tuple[np.ndarray, RealMatrix]:
    """Спектральное разложение симметричной матрицы, собственные значения по возрастанию."""
    S = check_symmetric(S, tol_sym)
    eigenvalues, eigenvectors = scipy.linalg.eigh(S)
    return eigenvalues, eigenvectors


def general_eigenvalues(A) -> np.ndarray:
    """Собственные значения произвольной квадратной матрицы (Хессенберг + QR со сдвигами в LAPACK)."""
    A = as_square(A)
    try:
        eigenvalues = scipy.linalg.eigvals(A)
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"QR iteration did not converge: {e}") from e
    return np.sort_complex(eigenvalues.astype(complex))


def check_spd(P, tol_sym: float = TOL_SYM, tol_pd: float = TOL_PD) -> SpdPoint:
    eigenvalues, _ = sym_eigen(P, tol_sym)
    if eigenvalues[0] <= tol_pd * max(abs(eigenvalues[-1]), 1e-300):
        raise NotPositiveDefinite(f"smallest eigenvalue {eigenvalues[0]:.3e} is not positive")
    return symmetrize(np.asarray(P, dtype=float))


def spd_power(P, t: float) -> SpdPoint:
    eigenvalues, V = sym_eigen(check_spd(P))
    return symmetrize((V * eigenvalues**t) @ V.T)


def spd_sqrt(P) -> SpdPoint:
    return spd_power(P, 0.5)


def spd_inv_sqrt(P) -> SpdPoint:
    return spd_power(P, -0.5)


def log_det_spd(P) -> float:
    """ln det(P) как сумма логарифмов собственных значений."""
    eigenvalues, _ = sym_eigen(check_spd(P))
    return float(np.sum(np.log(eigenvalues)))


def matrix_exp_sym(X) -> SpdPoint:
    eigenvalues, V = sym_eigen(X)
    return symmetrize((V * np.exp(eigenvalues)) @ V.T)


def matrix_log_spd(P) -> RealMatrix:
    eigenvalues, V = sym_eigen(check_spd(P))
    return symmetrize((V * np.log(eigenvalues)) @ V.T)


def polar_decompose(A, tol_sing: float = TOL_SING) -> Tuple[SpdPoint, RealMatrix]:
    """Левое полярное разложение A = Q·U, Q = √(AAᵀ)."""
    A = as_square(A).astype(float)
    if abs(np.linalg.det(A)) <= tol_sing:
        raise Singular(f"|det| = {abs(np.linalg.det(A)):.3e} is below {tol_sing:.1e}")
    U, Q = scipy.linalg.polar(A, side='left')
    return symmetrize(Q), U


def is_normal(A, tol: float = TOL_ORTH) -> bool:
    A = as_square(A)
    return bool(np.linalg.norm(A @ A.T - A.T @ A) <= tol * np.linalg.norm(A) ** 2)


def is_orthogonal(U, tol: float = TOL_ORTH) -> bool:
    U = as_square(U)
    return bool(np.linalg.norm(U.T @ U - np.eye(U.shape[0])) <= tol * np.sqrt(U.shape[0]))


def rho_embed(Z) -> RealMatrix:
    """ρ(Z): каждый элемент z заменяется блоком Re(z)·I₂ + Im(z)·E."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    return np.kron(Z.real, I2) + np.kron(Z.imag, E)


def rho_project(R, tol: float = TOL_SYM) -> ComplexMatrix:
    R = as_square(R)
    if R.shape[0] % 2:
        raise NotInImage(f"odd order {R.shape[0]}")
    a, b = R[0::2, 0::2], R[1::2, 0::2]
    c, d = R[0::2, 1::2], R[1::2, 1::2]
    scale = max(np.linalg.norm(R), 1.0)
    if np.linalg.norm(a - d) > tol * scale or np.linalg.norm(b + c) > tol * scale:
        raise NotInImage("2x2 blocks are not of the form aI + bE")
    return (a + d) / 2 + 1j * (b - c) / 2


def direct_sum(blocks: Sequence[RealMatrix]) -> RealMatrix:
    """Блочно-диагональная сборка; пустые блоки пропускаются."""
    matrices: List[np.ndarray] = []
    for block in blocks:
        block = np.atleast_2d(np.asarray(block))
        if block.size == 0:
            continue
        matrices.append(as_square(block, 'block'))
    if not matrices:
        logging.debug('direct_sum of empty blocks')
        return np.zeros((0, 0))
    return scipy.linalg.block_diag(*matrices)
