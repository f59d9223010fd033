"""Изометрия Fix(Γ_M∘δ) ≅ ℝ^{r′−1} × ∏ блоков с единичным определителем."""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from core.canonical import RjsSignature
from core.linalg import SpdPoint, check_spd, direct_sum, log_det_spd, rho_project, symmetrize
from errors import BlockExtractionFailure, NotAFixedPoint, NotInImage
from geometry.isometry import Family
from locus.fixlocus import FixedLocusDescriptor
from settings import TOL_RESIDUAL


@dataclass(frozen=True, eq=False)
class DeltaSplitting:
    blocks: List[SpdPoint]
    coordinates: List[float]


def block_layout(sig: RjsSignature) -> List[Tuple[int, int, bool]]:
    """(смещение, порядок, блок образа ρ) для каждого непустого диагонального блока"""
    layout = []
    offset = 0
    if sig.p:
        layout.append((offset, sig.p, False))
        offset += sig.p
    for _, m in sig.rotation_blocks:
        layout.append((offset, 2 * m, True))
        offset += 2 * m
    if sig.q:
        layout.append((offset, sig.q, False))
    return layout


def _check_delta_family(desc: FixedLocusDescriptor) -> None:
    if desc.family != Family.GAMMA_DELTA:
        raise ValueError(f"determinant splitting needs a GammaDelta locus, got {desc.family.value}")


def delta_splitting_coords(desc: FixedLocusDescriptor, P, tol: float = TOL_RESIDUAL) -> DeltaSplitting:
    """Блоки с единичным определителем и евклидовы координаты ln det блоков (кроме последнего)"""
    _check_delta_family(desc)
    P = check_spd(P)
    F = desc.conjugator
    B = symmetrize(np.linalg.solve(F, np.linalg.solve(F, P).T))
    layout = block_layout(desc.signature)

    diagonal = direct_sum([B[o:o + d, o:o + d] for o, d, _ in layout])
    off_block = np.linalg.norm(B - diagonal)
    if off_block > tol * np.linalg.norm(B):
        raise BlockExtractionFailure(f"off-block mass {off_block:.3e} after undoing the conjugator")

    blocks, log_dets = [], []
    for offset, size, complex_block in layout:
        block = B[offset:offset + size, offset:offset + size]
        if complex_block:
            try:
                rho_project(block, tol)
            except NotInImage as e:
                raise BlockExtractionFailure(f"block at {offset} is not in the image of rho: {e}") from e
        log_det = log_det_spd(block)
        blocks.append(block * np.exp(-log_det / size))
        log_dets.append(log_det)

    total = sum(log_dets)
    if abs(total) > tol * max(1.0, max(abs(v) for v in log_dets)):
        raise NotAFixedPoint(f"ln det of the block matrix is {total:.3e}, expected 0")
    return DeltaSplitting(blocks=blocks, coordinates=log_dets[:-1])


def delta_splitting_inverse(desc: FixedLocusDescriptor, splitting: DeltaSplitting) -> SpdPoint:
    _check_delta_family(desc)
    layout = block_layout(desc.signature)
    if len(splitting.blocks) != len(layout) or len(splitting.coordinates) != len(layout) - 1:
        raise ValueError(f"splitting does not match a locus with {len(layout)} blocks")

    rescaled = []
    for (_, size, _), block, t in zip(layout, splitting.blocks, splitting.coordinates):
        rescaled.append(np.asarray(block) * np.exp(t / size))
    last_size = layout[-1][1]
    rescaled.append(np.asarray(splitting.blocks[-1]) * np.exp(-sum(splitting.coordinates) / last_size))
    F = desc.conjugator
    return symmetrize(F @ direct_sum(rescaled) @ F.T)
