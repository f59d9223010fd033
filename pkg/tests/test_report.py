import numpy as np

from api.document import build_document, render_text
from core.canonical import omega_matrix
from geometry.isometry import IsometrySpec, Reason
from locus.report import LocusReporter, SampleCheck, locus_report
from tests.base import BaseTestCase


class TestLocusReport(BaseTestCase):
    def test_omega(self):
        report = locus_report(IsometrySpec(omega_matrix(1, 3), use_j=True), samples=4, seed=2)
        self.assertTrue(report.ellipticity.elliptic)
        self.assertEqual(report.descriptor.dimension, 2)
        self.assertEqual([f.label for f in report.descriptor.factors], ['SO0_over_SOxSO(1, 2)'])
        self.assertEqual([s.seed for s in report.samples], [2, 3, 4, 5])
        self.assertEqual(report.oracle_dimensions, [2, 2, 2])
        self.assertTrue(report.oracle_agrees)
        self.assertTrue(report.passed)
        self.assertIsInstance(report.first_point, np.ndarray)
        self.assertEqual(report.first_point.shape, (3, 3))

    def test_not_elliptic(self):
        report = locus_report(IsometrySpec(np.diag([2.0, 0.5])))
        self.assertFalse(report.ellipticity.elliptic)
        self.assertEqual(report.ellipticity.reason, Reason.MODULUS_NOT_ONE)
        self.assertIsNone(report.descriptor)
        self.assertEqual(report.samples, [])
        self.assertFalse(report.passed)

    def test_rotation_locus(self):
        report = LocusReporter(samples=2).run(IsometrySpec(np.array([[0.0, -1.0], [1.0, 0.0]])))
        self.assertEqual(report.descriptor.dimension, 1)
        self.assertEqual([f.label for f in report.descriptor.factors], ['Euclidean(1)'])
        self.assertEqual(report.oracle_dimensions, [1, 1])

    def test_document(self):
        report = locus_report(IsometrySpec(omega_matrix(1, 3), use_j=True), samples=2)
        document = build_document(report, seed=0, tolerances={'tol_residual': 1e-8})
        self.assertEqual(document.descriptor.dimension, 2)
        self.assertTrue(all(s.residual >= 0 for s in document.samples))
        text = render_text(document)
        self.assertIn('family: GammaJ', text)
        self.assertIn('passed: true', text)

    def test_oracle_skips_rejected_samples(self):
        class RejectingFirstReporter(LocusReporter):
            def check_sample(self, spec, descriptor, seed):
                P, check = super().check_sample(spec, descriptor, seed)
                if seed == self.seed:
                    return P, SampleCheck(seed=seed, residual=1.0, passed=False)
                return P, check

        report = RejectingFirstReporter(samples=5).run(IsometrySpec(omega_matrix(1, 3), use_j=True))
        self.assertEqual([s.passed for s in report.samples], [False, True, True, True, True])
        self.assertEqual(report.oracle_dimensions, [2, 2, 2])
        self.assertFalse(report.passed)
