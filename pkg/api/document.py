"""Документ отчёта о множестве неподвижных точек и его текстовое представление."""
import math
from typing import Dict, List, Optional

from pydantic import BaseModel, validator

from geometry.isometry import EllipticityReport
from locus.report import LocusReport
from settings import VERSION
from utils import convert_to_dict, format_matrix, format_number


class InputEcho(BaseModel):
    n: int
    data: List[List[float]]
    use_j: bool
    use_delta: bool
    family: str


class EllipticityDocument(BaseModel):
    elliptic: bool
    reason: str
    rjs_of: Optional[dict] = None
    rja_of_U: Optional[dict] = None


class FactorDocument(BaseModel):
    kind: str
    params: List[int]
    dimension: int
    label: str


class DescriptorDocument(BaseModel):
    family: str
    conjugator: List[List[float]]
    signature: dict
    det_constraint: Optional[float] = None
    dimension: int


class SampleDocument(BaseModel):
    seed: int
    residual: float
    passed: bool

    @validator('residual')
    def finite_non_negative(cls, v):
        if not math.isfinite(v) or v < 0:
            raise ValueError(f'residual must be a non-negative finite number, got {v}')
        return v


class ReportDocument(BaseModel):
    version: str = VERSION
    input: InputEcho
    ellipticity: EllipticityDocument
    descriptor: Optional[DescriptorDocument] = None
    factors: List[FactorDocument] = []
    samples: List[SampleDocument] = []
    oracle_dimensions: List[int] = []
    oracle_agrees: Optional[bool] = None
    passed: bool
    failure: Optional[str] = None
    seed: int
    tolerances: Dict[str, float]


def ellipticity_document(report: EllipticityReport) -> EllipticityDocument:
    return EllipticityDocument(**convert_to_dict(report))


def build_document(report: LocusReport, seed: int, tolerances: Dict[str, float]) -> ReportDocument:
    spec = report.spec
    document = ReportDocument(
        input=InputEcho(
            n=spec.n, data=spec.M.tolist(), use_j=spec.use_j, use_delta=spec.use_delta, family=spec.family.value
        ),
        ellipticity=ellipticity_document(report.ellipticity),
        samples=[SampleDocument(**convert_to_dict(sample)) for sample in report.samples],
        oracle_dimensions=report.oracle_dimensions,
        oracle_agrees=report.oracle_agrees,
        passed=report.passed,
        failure=report.failure,
        seed=seed,
        tolerances=tolerances,
    )
    desc = report.descriptor
    if desc is not None:
        document.descriptor = DescriptorDocument(
            family=desc.family.value,
            conjugator=desc.conjugator.tolist(),
            signature=convert_to_dict(desc.signature),
            det_constraint=desc.det_constraint,
            dimension=desc.dimension,
        )
        document.factors = [
            FactorDocument(kind=f.kind.value, params=list(f.params), dimension=f.dimension, label=f.label)
            for f in desc.factors
        ]
    return document


def _signature_line(name: str, signature: Optional[dict]) -> List[str]:
    if not signature:
        return []
    fields = ', '.join(f'{key}={value}' for key, value in signature.items())
    return [f'{name}: {fields}']


def render_ellipticity(document: EllipticityDocument) -> str:
    lines = [f'elliptic: {str(document.elliptic).lower()}', f'reason: {document.reason}']
    lines += _signature_line('rjs', document.rjs_of)
    lines += _signature_line('rja', document.rja_of_U)
    return '\n'.join(lines)


def render_text(document: ReportDocument) -> str:
    lines = [
        f'version: {document.version}',
        f'family: {document.input.family}',
        f'n: {document.input.n}',
        'M:',
        format_matrix(document.input.data),
        render_ellipticity(document.ellipticity),
    ]
    if document.descriptor is not None:
        desc = document.descriptor
        lines.append(f'dimension: {desc.dimension}')
        if desc.det_constraint is not None:
            lines.append(f'det constraint: {format_number(desc.det_constraint)}')
        lines.append('factors: ' + (', '.join(f.label for f in document.factors) or 'none'))
        lines += ['conjugator:', format_matrix(desc.conjugator)]
    if document.samples:
        lines.append('samples (seed residual passed):')
        for sample in document.samples:
            lines.append(f'  {sample.seed} {format_number(sample.residual)} {str(sample.passed).lower()}')
    if document.oracle_dimensions:
        lines.append('oracle dimensions: ' + ' '.join(str(d) for d in document.oracle_dimensions))
        lines.append(f'oracle agrees: {str(document.oracle_agrees).lower()}')
    if document.failure:
        lines.append(f'failure: {document.failure}')
    lines.append(f'passed: {str(document.passed).lower()}')
    lines.append(f'seed: {document.seed}')
    lines.append('tolerances: ' + ', '.join(f'{k}={format_number(v)}' for k, v in document.tolerances.items()))
    return '\n'.join(lines)
