"""Множества неподвижных точек эллиптических изометрий: описание, проверка принадлежности и численная размерность."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np
import scipy.linalg

from core.canonical import RjaSignature, RjsSignature, rjs_conjugator_normalized
from core.linalg import RealMatrix, check_spd, spd_inv_sqrt, spd_sqrt, symmetrize
from errors import DimensionMismatch, LociError, NotAFixedPoint, NotElliptic
from geometry.isometry import (
    Family,
    IsometrySpec,
    apply,
    classify,
    differential,
    orthogonal_congruence_data,
    signature_tolerance,
)
from locus.derham import DeRhamCalculator, DeRhamFactor
from settings import KERNEL_THRESHOLD, TOL_DET_UNIT, TOL_EIG, TOL_RESIDUAL


@dataclass(frozen=True, eq=False)
class FixedLocusDescriptor:
    family: Family
    conjugator: RealMatrix
    signature: Union[RjsSignature, RjaSignature]
    det_constraint: Optional[float]
    dimension: int
    factors: List[DeRhamFactor] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.conjugator.shape[0]


def fix_locus(spec: IsometrySpec, tol_det_unit: float = TOL_DET_UNIT, **tolerances) -> FixedLocusDescriptor:
    """Описание Fix(Φ): сопрягающая матрица, сигнатура, ограничение на определитель и множители де Рама."""
    tol_eig = tolerances.pop('tol_eig', TOL_EIG)
    report = classify(spec, tol_eig=tol_eig, tol_det_unit=tol_det_unit, **tolerances)
    if not report.elliptic:
        raise NotElliptic(f"{spec.family.value} with this M is not elliptic: {report.reason.value}")

    family = spec.family
    tolerances['tol_eig'] = signature_tolerance(family, tol_eig)
    if spec.use_j:
        conjugator = orthogonal_congruence_data(spec.M, **tolerances).R
        signature = report.rja_of_U
    else:
        _, conjugator = rjs_conjugator_normalized(spec.M, **tolerances)
        signature = report.rjs_of

    det_constraint = None
    if family in (Family.GAMMA_DELTA, Family.GAMMA_J):
        det_constraint = float(abs(np.linalg.det(spec.M)))

    calculator = DeRhamCalculator(family, signature)
    factors = calculator.get_factors()
    dimension = calculator.get_dimension()
    if dimension != sum(factor.dimension for factor in factors):
        raise ValueError(f"factor dimensions do not add up to {dimension}")
    logging.info(f"{family.value}: fixed locus of dimension {dimension}, factors {[f.label for f in factors]}")
    return FixedLocusDescriptor(
        family=family,
        conjugator=conjugator,
        signature=signature,
        det_constraint=det_constraint,
        dimension=dimension,
        factors=factors,
    )


def membership_residual(spec: IsometrySpec, P) -> float:
    """‖Φ(P) − P‖ / ‖P‖"""
    P = check_spd(P)
    return float(np.linalg.norm(apply(spec, P) - P) / np.linalg.norm(P))


def membership(spec: IsometrySpec, P, tol: float = TOL_RESIDUAL) -> bool:
    try:
        return membership_residual(spec, P) <= tol
    except LociError as e:
        logging.warning(f'Point rejected: {e}')
        return False


def sym_basis(n: int) -> List[RealMatrix]:
    """Ортонормированный (по Фробениусу) базис симметричных матриц порядка n"""
    basis = []
    for i in range(n):
        for j in range(i, n):
            unit = np.zeros((n, n))
            if i == j:
                unit[i, i] = 1.0
            else:
                unit[i, j] = unit[j, i] = 1 / np.sqrt(2)
            basis.append(unit)
    return basis


def sym_coordinates(X: RealMatrix) -> np.ndarray:
    rows, cols = np.triu_indices(X.shape[0])
    weights = np.where(rows == cols, 1.0, np.sqrt(2))
    return X[rows, cols] * weights


def tangent_dim_oracle(
    spec: IsometrySpec, P, tol: float = TOL_RESIDUAL, threshold: float = KERNEL_THRESHOLD
) -> int:
    """Размерность ядра dΦ_P − id на пространстве симметричных матриц"""
    P = check_spd(P)
    if P.shape != spec.M.shape:
        raise DimensionMismatch(f"point of order {P.shape[0]} for isometry of order {spec.n}")
    residual = membership_residual(spec, P)
    if residual > tol:
        raise NotAFixedPoint(f"membership residual {residual:.3e} exceeds {tol:.1e}")

    # в координатах P^{-1/2}·X·P^{-1/2} дифференциал изометрии ортогонален
    root, inv_root = spd_sqrt(P), spd_inv_sqrt(P)
    columns = []
    for X in sym_basis(spec.n):
        image = differential(spec, P, symmetrize(root @ X @ root)).direction
        columns.append(sym_coordinates(symmetrize(inv_root @ image @ inv_root)))
    D = np.column_stack(columns)
    singular_values = scipy.linalg.svd(D - np.eye(D.shape[0]), compute_uv=False)
    if singular_values.max() <= 1e-12:
        return D.shape[0]
    return int(np.sum(singular_values <= threshold * singular_values.max()))
