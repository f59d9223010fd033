"""Случайные точки множества неподвижных точек: экспонента симметричной части алгебры Ли стабилизатора."""
import numpy as np

from core.canonical import RjaSignature, RjsSignature, symplectic_frame
from core.linalg import RealMatrix, SpdPoint, direct_sum, matrix_exp_sym, rho_embed, symmetrize
from geometry.isometry import Family
from locus.fixlocus import FixedLocusDescriptor
from settings import SAMPLE_SCALE


def gaussian_symmetric(rng: np.random.Generator, size: int, scale: float) -> RealMatrix:
    G = np.triu(rng.normal(0.0, scale, (size, size)))
    return G + np.triu(G, 1).T


def gaussian_hermitian(rng: np.random.Generator, size: int, scale: float) -> np.ndarray:
    real = gaussian_symmetric(rng, size, scale)
    imag = np.triu(rng.normal(0.0, scale, (size, size)), 1)
    return real + 1j * (imag - imag.T)


def congruence_generator(rng: np.random.Generator, sig: RjsSignature, scale: float) -> RealMatrix:
    """Симметричный элемент коммутанта формы RJS (порядок блоков: p, повороты, q)"""
    blocks = [gaussian_symmetric(rng, sig.p, scale)]
    for _, m in sig.rotation_blocks:
        blocks.append(rho_embed(gaussian_hermitian(rng, m, scale)))
    blocks.append(gaussian_symmetric(rng, sig.q, scale))
    return direct_sum(blocks)


def indefinite_block(rng: np.random.Generator, p: int, q: int, scale: float) -> RealMatrix:
    """[[0, B], [Bᵀ, 0]]: симметричная часть so(p, q)"""
    if not p or not q:
        return np.zeros((p + q, p + q))
    B = rng.normal(0.0, scale, (p, q))
    return np.block([[np.zeros((p, p)), B], [B.T, np.zeros((q, q))]])


def unitary_block(rng: np.random.Generator, mu: int, nu: int, scale: float) -> RealMatrix:
    """ρ([[0, C], [C*, 0]]): симметричная часть su(μ, ν)"""
    if not mu or not nu:
        return np.zeros((2 * (mu + nu), 2 * (mu + nu)))
    C = rng.normal(0.0, scale, (mu, nu)) + 1j * rng.normal(0.0, scale, (mu, nu))
    H = np.block([[np.zeros((mu, mu)), C], [C.conj().T, np.zeros((nu, nu))]])
    return rho_embed(H)


def symplectic_block(rng: np.random.Generator, k: int, scale: float) -> RealMatrix:
    """Симметричная гамильтонова матрица, переведённая в базис формы Λ_k"""
    A = gaussian_symmetric(rng, k, scale)
    Bs = gaussian_symmetric(rng, k, scale)
    W = symplectic_frame(k)
    return W @ np.block([[A, Bs], [Bs, -A]]) @ W.T


def inversion_generator(rng: np.random.Generator, sig: RjaSignature, scale: float) -> RealMatrix:
    """Симметричная матрица, антикоммутирующая с формой RJA (порядок блоков: p+q, смешанные, k)"""
    blocks = [indefinite_block(rng, sig.p, sig.q, scale)]
    for _, mu, nu in sig.mixed_blocks:
        blocks.append(unitary_block(rng, mu, nu, scale))
    if sig.k:
        blocks.append(symplectic_block(rng, sig.k, scale))
    return direct_sum(blocks)


def sample_point(desc: FixedLocusDescriptor, seed: int = 0, scale: float = SAMPLE_SCALE) -> SpdPoint:
    """Точка P = F·exp(Y)·Fᵀ множества неподвижных точек; одинаковый seed даёт одинаковую точку"""
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    rng = np.random.default_rng(seed)
    F = desc.conjugator
    n = desc.n
    if desc.dimension == 0:
        return symmetrize(F @ F.T)

    if desc.family in (Family.GAMMA, Family.GAMMA_DELTA):
        B = matrix_exp_sym(congruence_generator(rng, desc.signature, scale))
    else:
        B = matrix_exp_sym(inversion_generator(rng, desc.signature, scale))

    if desc.family == Family.GAMMA_DELTA:
        _, log_det_F = np.linalg.slogdet(F)
        _, log_det_B = np.linalg.slogdet(B)
        B = B * np.exp((np.log(desc.det_constraint) - log_det_B - 2 * log_det_F) / n)
    elif desc.family == Family.GAMMA_J_DELTA:
        B = B * rng.lognormal(0.0, scale)
    return symmetrize(F @ B @ F.T)
