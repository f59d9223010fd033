from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple, Union

from core.canonical import RjaSignature, RjsSignature
from geometry.isometry import Family


class FactorKind(str, Enum):
    EUCLIDEAN = 'Euclidean'
    SL_OVER_SO = 'SL_over_SO'
    SLC_OVER_SU = 'SLC_over_SU'
    SO0_OVER_SOXSO = 'SO0_over_SOxSO'
    SP_OVER_U = 'Sp_over_U'
    SU_OVER_SU = 'SU_over_SU'


@dataclass(frozen=True)
class DeRhamFactor:
    kind: FactorKind
    params: Tuple[int, ...]

    def __post_init__(self):
        if self.kind in (FactorKind.SO0_OVER_SOXSO, FactorKind.SU_OVER_SU):
            if len(self.params) != 2 or min(self.params) < 1:
                raise ValueError(f"{self.kind.value} needs two positive parameters, got {self.params}")
            if self.kind == FactorKind.SO0_OVER_SOXSO and sum(self.params) < 3:
                raise ValueError("SO0(p,q)/SO(p)xSO(q) needs p + q >= 3")
        elif len(self.params) != 1:
            raise ValueError(f"{self.kind.value} needs one parameter, got {self.params}")
        elif self.kind in (FactorKind.SL_OVER_SO, FactorKind.SLC_OVER_SU) and self.params[0] < 2:
            raise ValueError(f"{self.kind.value} needs m >= 2")
        elif self.params[0] < 1:
            raise ValueError(f"{self.kind.value} needs a positive parameter")

    @property
    def dimension(self) -> int:
        if self.kind == FactorKind.EUCLIDEAN:
            (m,) = self.params
            return m
        if self.kind == FactorKind.SL_OVER_SO:
            (m,) = self.params
            return m * (m + 1) // 2 - 1
        if self.kind == FactorKind.SLC_OVER_SU:
            (m,) = self.params
            return m * m - 1
        if self.kind == FactorKind.SO0_OVER_SOXSO:
            p, q = self.params
            return p * q
        if self.kind == FactorKind.SP_OVER_U:
            (k,) = self.params
            return k * (k + 1)
        mu, nu = self.params
        return 2 * mu * nu

    @property
    def label(self) -> str:
        return f"{self.kind.value}({', '.join(str(v) for v in self.params)})"


class DeRhamCalculator:
    def __init__(self, family: Family, signature: Union[RjsSignature, RjaSignature]) -> None:
        self.family = family
        self.signature = signature
        j_family = family in (Family.GAMMA_J, Family.GAMMA_J_DELTA)
        if j_family != isinstance(signature, RjaSignature):
            raise TypeError(f"{family.value} needs {'an RJA' if j_family else 'an RJS'} signature")

    def get_flat_rank(self) -> int:
        """Ранг евклидова множителя r′ = r + [p>0] + [q>0] для семейств без j"""
        sig = self.signature
        return sig.r + int(sig.p > 0) + int(sig.q > 0)

    def get_congruence_factors(self) -> List[DeRhamFactor]:
        sig = self.signature
        factors = []
        if sig.p >= 2:
            factors.append(DeRhamFactor(FactorKind.SL_OVER_SO, (sig.p,)))
        if sig.q >= 2:
            factors.append(DeRhamFactor(FactorKind.SL_OVER_SO, (sig.q,)))
        for _, m in sig.rotation_blocks:
            if m >= 2:
                factors.append(DeRhamFactor(FactorKind.SLC_OVER_SU, (m,)))
        return factors

    def get_inversion_factors(self) -> List[DeRhamFactor]:
        sig = self.signature
        factors = []
        if sig.p >= 1 and sig.q >= 1 and sig.p + sig.q >= 3:
            factors.append(DeRhamFactor(FactorKind.SO0_OVER_SOXSO, (sig.p, sig.q)))
        if sig.k >= 1:
            factors.append(DeRhamFactor(FactorKind.SP_OVER_U, (sig.k,)))
        for _, mu, nu in sig.mixed_blocks:
            if mu >= 1 and nu >= 1:
                factors.append(DeRhamFactor(FactorKind.SU_OVER_SU, (mu, nu)))
        return factors

    def get_factors(self) -> List[DeRhamFactor]:
        """Множители разложения де Рама, евклидов множитель первым"""
        euclidean = 0
        if self.family == Family.GAMMA:
            euclidean = self.get_flat_rank()
        elif self.family == Family.GAMMA_DELTA:
            rank = self.get_flat_rank()
            euclidean = rank - 1 if rank >= 2 else 0
        else:
            unit_pair = self.signature.p == 1 and self.signature.q == 1
            if self.family == Family.GAMMA_J:
                euclidean = 1 if unit_pair else 0
            else:
                euclidean = 2 if unit_pair else 1

        factors = [DeRhamFactor(FactorKind.EUCLIDEAN, (euclidean,))] if euclidean else []
        if self.family in (Family.GAMMA, Family.GAMMA_DELTA):
            return factors + self.get_congruence_factors()
        return factors + self.get_inversion_factors()

    def get_dimension(self) -> int:
        """Размерность множества неподвижных точек по формуле семейства"""
        sig = self.signature
        if self.family in (Family.GAMMA, Family.GAMMA_DELTA):
            dimension = sig.p * (sig.p + 1) // 2 + sig.q * (sig.q + 1) // 2
            dimension += sum(m * m for _, m in sig.rotation_blocks)
            return dimension - 1 if self.family == Family.GAMMA_DELTA else dimension
        dimension = sig.p * sig.q + 2 * sum(mu * nu for _, mu, nu in sig.mixed_blocks) + sig.k * (sig.k + 1)
        return dimension + 1 if self.family == Family.GAMMA_J_DELTA else dimension
