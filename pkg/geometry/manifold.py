"""Следовая метрика tr(A⁻¹VA⁻¹W) на многообразии симметричных положительно определённых матриц."""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from core.linalg import (
    RealMatrix,
    SpdPoint,
    check_spd,
    check_symmetric,
    log_det_spd,
    matrix_exp_sym,
    matrix_log_spd,
    spd_inv_sqrt,
    spd_power,
    spd_sqrt,
    sym_eigen,
    symmetrize,
)
from errors import BasePointMismatch, DimensionMismatch
from settings import TOL_SYM


@dataclass(frozen=True, eq=False)
class TangentVector:
    base: SpdPoint
    direction: RealMatrix

    def __post_init__(self):
        base = check_spd(self.base)
        direction = check_symmetric(self.direction)
        if base.shape != direction.shape:
            raise DimensionMismatch(f"base {base.shape} and direction {direction.shape} differ")
        object.__setattr__(self, 'base', base)
        object.__setattr__(self, 'direction', direction)


def _same_order(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"orders differ: {A.shape} vs {B.shape}")


def _direction_at(A: SpdPoint, V: Union[TangentVector, RealMatrix]) -> RealMatrix:
    if isinstance(V, TangentVector):
        if V.base.shape != A.shape or np.linalg.norm(V.base - A) > TOL_SYM * np.linalg.norm(A):
            raise BasePointMismatch('tangent vector is attached to another base point')
        return V.direction
    direction = check_symmetric(V)
    _same_order(A, direction)
    return direction


def metric(A, V, W) -> float:
    A = check_spd(A)
    X = np.linalg.solve(A, _direction_at(A, V))
    Y = np.linalg.solve(A, _direction_at(A, W))
    return float(np.trace(X @ Y))


def exp_map(A, V) -> SpdPoint:
    A = check_spd(A)
    half, inv_half = spd_sqrt(A), spd_inv_sqrt(A)
    inner = matrix_exp_sym(symmetrize(inv_half @ _direction_at(A, V) @ inv_half))
    return symmetrize(half @ inner @ half)


def log_map(A, B) -> TangentVector:
    A, B = check_spd(A), check_spd(B)
    _same_order(A, B)
    half, inv_half = spd_sqrt(A), spd_inv_sqrt(A)
    inner = matrix_log_spd(symmetrize(inv_half @ B @ inv_half))
    return TangentVector(A, symmetrize(half @ inner @ half))


def geodesic(A, B, t: float) -> SpdPoint:
    """Точка γ(t) геодезической с γ(0) = A и γ(1) = B."""
    A, B = check_spd(A), check_spd(B)
    _same_order(A, B)
    half, inv_half = spd_sqrt(A), spd_inv_sqrt(A)
    inner = spd_power(symmetrize(inv_half @ B @ inv_half), t)
    return symmetrize(half @ inner @ half)


def distance(A, B) -> float:
    A, B = check_spd(A), check_spd(B)
    _same_order(A, B)
    inv_half = spd_inv_sqrt(A)
    eigenvalues, _ = sym_eigen(symmetrize(inv_half @ B @ inv_half))
    return float(np.sqrt(np.sum(np.log(eigenvalues) ** 2)))


def sl_split(P) -> Tuple[SpdPoint, float]:
    """P ↦ (P/det(P)^{1/n}, ln(det P)/√n): изометрия на SL-часть × прямая."""
    P = check_spd(P)
    n = P.shape[0]
    log_det = log_det_spd(P)
    return symmetrize(P * np.exp(-log_det / n)), float(log_det / np.sqrt(n))


def sl_merge(unit_det_part, coordinate: float) -> SpdPoint:
    unit_det_part = check_spd(unit_det_part)
    n = unit_det_part.shape[0]
    return symmetrize(unit_det_part * np.exp(coordinate / np.sqrt(n)))
