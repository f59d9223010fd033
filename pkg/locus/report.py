import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from core.linalg import SpdPoint
from errors import LociError
from geometry.isometry import EllipticityReport, IsometrySpec, classify
from locus.fixlocus import FixedLocusDescriptor, fix_locus, membership_residual, tangent_dim_oracle
from locus.sampler import sample_point
from settings import SAMPLE_SCALE, SAMPLES, TOL_RESIDUAL


@dataclass(frozen=True)
class SampleCheck:
    seed: int
    residual: float
    passed: bool


@dataclass
class LocusReport:
    spec: IsometrySpec
    ellipticity: EllipticityReport
    descriptor: Optional[FixedLocusDescriptor] = None
    samples: List[SampleCheck] = field(default_factory=list)
    oracle_dimensions: List[int] = field(default_factory=list)
    oracle_agrees: Optional[bool] = None
    first_point: Optional[SpdPoint] = None
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.ellipticity.elliptic
            and self.failure is None
            and all(sample.passed for sample in self.samples)
            and self.oracle_agrees is not False
        )


class LocusReporter:
    def __init__(
        self, samples: int = SAMPLES, seed: int = 0, tol: float = TOL_RESIDUAL, scale: float = SAMPLE_SCALE, **tolerances
    ) -> None:
        self.samples = samples
        self.seed = seed
        self.tol = tol
        self.scale = scale
        self.tolerances = tolerances

    def check_sample(
        self, spec: IsometrySpec, descriptor: FixedLocusDescriptor, seed: int
    ) -> Tuple[SpdPoint, SampleCheck]:
        P = sample_point(descriptor, seed=seed, scale=self.scale)
        residual = membership_residual(spec, P)
        passed = residual <= self.tol
        if not passed:
            logging.warning(f'Sample {seed}: membership residual {residual:.3e} exceeds {self.tol:.1e}')
        return P, SampleCheck(seed=seed, residual=residual, passed=passed)

    def check_samples(self, spec: IsometrySpec, report: LocusReport) -> None:
        for i in range(self.samples):
            P, check = self.check_sample(spec, report.descriptor, self.seed + i)
            report.samples.append(check)
            if i == 0:
                report.first_point = P
            # численная размерность считается на первых трёх прошедших проверку точках
            if check.passed and len(report.oracle_dimensions) < 3:
                report.oracle_dimensions.append(tangent_dim_oracle(spec, P, tol=self.tol))

    def run(self, spec: IsometrySpec) -> LocusReport:
        """Классификация, описание множества неподвижных точек и проверка выборки"""
        ellipticity = classify(spec, **self.tolerances)
        report = LocusReport(spec=spec, ellipticity=ellipticity)
        if not ellipticity.elliptic:
            logging.info(f'{spec.family.value}: not elliptic ({ellipticity.reason.value})')
            return report
        try:
            report.descriptor = fix_locus(spec, **self.tolerances)
            self.check_samples(spec, report)
        except LociError as e:
            logging.warning(f'Locus report failed: {e}')
            report.failure = f'{type(e).__name__}: {e}'
            return report
        if report.oracle_dimensions:
            report.oracle_agrees = all(d == report.descriptor.dimension for d in report.oracle_dimensions)
        return report


def locus_report(
    spec: IsometrySpec,
    samples: int = SAMPLES,
    seed: int = 0,
    tol: float = TOL_RESIDUAL,
    scale: float = SAMPLE_SCALE,
    **tolerances,
) -> LocusReport:
    return LocusReporter(samples=samples, seed=seed, tol=tol, scale=scale, **tolerances).run(spec)
