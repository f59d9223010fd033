"""Четыре семейства изометрий Γ_M, Γ_M∘δ, Γ_M∘j, Γ_M∘j∘δ и проверка их эллиптичности."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from core.canonical import (
    RjaSignature,
    RjsSignature,
    check_semisimple,
    rja_orthogonal_conjugator,
    rja_signature,
    rjs_conjugator,
    spectral_signature,
)
from core.linalg import (
    RealMatrix,
    SpdPoint,
    as_square,
    check_spd,
    is_normal,
    general_eigenvalues,
    log_det_spd,
    polar_decompose,
    spd_sqrt,
    symmetrize,
)
from errors import DimensionMismatch, NotSemisimple, ReassemblyFailure, Singular
from geometry.manifold import TangentVector, _direction_at, sl_split
from settings import ANGLE_GAP, TOL_CLUSTER, TOL_DET_UNIT, TOL_EIG, TOL_ORTH, TOL_RANK, TOL_SING


class Family(str, Enum):
    GAMMA = 'Gamma'
    GAMMA_DELTA = 'GammaDelta'
    GAMMA_J = 'GammaJ'
    GAMMA_J_DELTA = 'GammaJDelta'


class Reason(str, Enum):
    NOT_SEMISIMPLE = 'NotSemisimple'
    NON_CONSTANT_MODULUS = 'NonConstantModulus'
    MODULUS_NOT_ONE = 'ModulusNotOne'
    DET_NOT_UNIT = 'DetNotUnit'
    ELLIPTIC = 'Elliptic'


@dataclass(frozen=True, eq=False)
class IsometrySpec:
    M: RealMatrix
    use_j: bool = False
    use_delta: bool = False

    def __post_init__(self):
        M = as_square(self.M, 'M').astype(float)
        if M.shape[0] < 2:
            raise DimensionMismatch(f"order must be at least 2, got {M.shape[0]}")
        if abs(np.linalg.det(M)) <= TOL_SING:
            raise Singular(f"|det M| = {abs(np.linalg.det(M)):.3e} is below {TOL_SING:.1e}")
        object.__setattr__(self, 'M', M)

    @property
    def n(self) -> int:
        return self.M.shape[0]

    @property
    def family(self) -> Family:
        if self.use_j:
            return Family.GAMMA_J_DELTA if self.use_delta else Family.GAMMA_J
        return Family.GAMMA_DELTA if self.use_delta else Family.GAMMA


@dataclass(frozen=True)
class EllipticityReport:
    elliptic: bool
    reason: Reason
    rjs_of: Optional[RjsSignature] = None
    rja_of_U: Optional[RjaSignature] = None


@dataclass(frozen=True, eq=False)
class CongruenceData:
    S: RealMatrix
    Q: SpdPoint
    U: RealMatrix
    Z: RealMatrix
    R: RealMatrix
    J_tilde: RealMatrix
    signature: RjaSignature


def _checked_point(spec: IsometrySpec, P) -> SpdPoint:
    P = check_spd(P)
    if P.shape != spec.M.shape:
        raise DimensionMismatch(f"point of order {P.shape[0]} for isometry of order {spec.n}")
    return P


def apply(spec: IsometrySpec, P) -> SpdPoint:
    """Φ(P): сначала δ, затем j, затем конгруэнция Γ_M."""
    X = _checked_point(spec, P)
    if spec.use_delta:
        X = X * np.exp(-2.0 * log_det_spd(X) / spec.n)
    if spec.use_j:
        X = symmetrize(np.linalg.inv(X))
    return symmetrize(spec.M @ X @ spec.M.T)


def differential(spec: IsometrySpec, P, V) -> TangentVector:
    X = _checked_point(spec, P)
    dX = _direction_at(X, V)
    n = spec.n
    if spec.use_delta:
        factor = np.exp(-2.0 * log_det_spd(X) / n)
        trace_term = np.trace(np.linalg.solve(X, dX))
        dX = factor * (dX - (2.0 / n) * trace_term * X)
        X = factor * X
    if spec.use_j:
        X_inv = np.linalg.inv(X)
        dX = -X_inv @ dX @ X_inv
    return TangentVector(apply(spec, P), symmetrize(spec.M @ dX @ spec.M.T))


def inverse_transpose_product(M: RealMatrix) -> RealMatrix:
    """MM^{−T}."""
    return M @ np.linalg.inv(M).T


def reduce_delta(spec: IsometrySpec) -> IsometrySpec:
    """Конгруэнция Γ_{M/|det M|^{1/n}}, чьё множество неподвижных точек на уровне det P = |det M| совпадает с Fix(Γ_M∘δ)."""
    _, log_abs_det = np.linalg.slogdet(spec.M)
    return IsometrySpec(spec.M * np.exp(-log_abs_det / spec.n))


def orthogonal_congruence_data(M, tol: float = 1e-7, **tolerances) -> CongruenceData:
    """Разложение M = R·J̃_U·Rᵀ с R = S·√Q·Z."""
    M = as_square(M).astype(float)
    n = M.shape[0]
    if is_normal(M, TOL_ORTH):
        S = np.eye(n)
    else:
        _, S = rjs_conjugator(inverse_transpose_product(M), **tolerances)
    N = np.linalg.solve(S, np.linalg.solve(S, M.T).T)
    Q, U = polar_decompose(N)
    J_tilde, Z = rja_orthogonal_conjugator(U, **tolerances)
    signature = rja_signature(U, **tolerances)
    R = S @ spd_sqrt(Q) @ Z

    residual = np.linalg.norm(R @ J_tilde @ R.T - M)
    if residual > tol * np.linalg.norm(M):
        raise ReassemblyFailure(f"congruence reassembly residual {residual:.3e}")
    return CongruenceData(S=S, Q=Q, U=U, Z=Z, R=R, J_tilde=J_tilde, signature=signature)


def signature_tolerance(family: Family, tol_eig: float) -> float:
    """Допуск на разброс модулей, согласованный с проверкой |λ| = 1."""
    if family == Family.GAMMA_DELTA:
        return tol_eig
    # |λ| ∈ [1 − t, 1 + t] даёт max/min − 1 ≤ 2t/(1 − t) ≤ 3t при t ≤ 1/3
    return 3 * tol_eig


def classify(
    spec: IsometrySpec,
    tol_eig: float = TOL_EIG,
    tol_det_unit: float = TOL_DET_UNIT,
    tol_rank: float = TOL_RANK,
    tol_cluster: float = TOL_CLUSTER,
    angle_gap: float = ANGLE_GAP,
) -> EllipticityReport:
    family = spec.family
    target = inverse_transpose_product(spec.M) if spec.use_j else spec.M
    eigenvalues = general_eigenvalues(target)
    try:
        check_semisimple(target, eigenvalues, tol_rank=tol_rank, tol_cluster=tol_cluster)
    except NotSemisimple as e:
        logging.info(f"{family.value}: {e}")
        return EllipticityReport(False, Reason.NOT_SEMISIMPLE)

    moduli = np.abs(eigenvalues)
    if family == Family.GAMMA_DELTA:
        if moduli.max() / moduli.min() - 1 > tol_eig:
            return EllipticityReport(False, Reason.NON_CONSTANT_MODULUS)
    elif np.max(np.abs(moduli - 1)) > tol_eig:
        return EllipticityReport(False, Reason.MODULUS_NOT_ONE)

    if family == Family.GAMMA_J_DELTA and abs(abs(np.linalg.det(spec.M)) - 1) > tol_det_unit:
        return EllipticityReport(False, Reason.DET_NOT_UNIT)

    tolerances = dict(
        tol_eig=signature_tolerance(family, tol_eig), tol_rank=tol_rank, tol_cluster=tol_cluster, angle_gap=angle_gap
    )
    rjs = spectral_signature(target, **tolerances)
    rja = orthogonal_congruence_data(spec.M, **tolerances).signature if spec.use_j else None
    return EllipticityReport(True, Reason.ELLIPTIC, rjs_of=rjs, rja_of_U=rja)


def cone_projection(P) -> SpdPoint:
    """P/det(P)^{1/n}: точка Fix(Γ_M∘j∘δ) переходит в Fix(Γ_M∘j)."""
    unit_det_part, _ = sl_split(P)
    return unit_det_part
