import numpy as np

from errors import BasePointMismatch, DimensionMismatch, NotPositiveDefinite
from geometry.manifold import TangentVector, distance, exp_map, geodesic, log_map, metric, sl_merge, sl_split
from tests.base import BaseTestCase


class TestMetric(BaseTestCase):
    def test_identity_base(self):
        V, W = self.random_symmetric(3), self.random_symmetric(3)
        self.assertAlmostEqual(metric(np.eye(3), V, W), np.trace(V @ W), places=12)

    def test_congruence_invariance(self):
        A, V, W = self.random_spd(4), self.random_symmetric(4), self.random_symmetric(4)
        C = self.random_conditioned(4)
        moved = metric(C @ A @ C.T, C @ V @ C.T, C @ W @ C.T)
        self.assertAlmostEqual(moved, metric(A, V, W), delta=1e-9 * max(1.0, abs(moved)))

    def test_gram_matrix_positive(self):
        for n in range(2, 6):
            A = self.random_spd(n)
            basis = [self.random_symmetric(n) for _ in range(n * (n + 1) // 2)]
            gram = np.array([[metric(A, V, W) for W in basis] for V in basis])
            self.assertGreater(np.linalg.eigvalsh(gram).min(), 0.0)

    def test_tangent_vector_validation(self):
        with self.assertRaises(DimensionMismatch):
            TangentVector(np.eye(2), np.eye(3))
        with self.assertRaises(NotPositiveDefinite):
            TangentVector(-np.eye(2), np.eye(2))

    def test_base_point_mismatch(self):
        V = TangentVector(np.eye(2), np.eye(2))
        with self.assertRaises(BasePointMismatch):
            exp_map(2 * np.eye(2), V)


class TestExpLog(BaseTestCase):
    def test_round_trip(self):
        for n in range(2, 6):
            A, B = self.random_spd(n), self.random_spd(n)
            V = log_map(A, B)
            self.assertMatrixClose(V.base, A)
            self.assertMatrixClose(exp_map(A, V), B, rtol=1e-8, atol=1e-9)

    def test_exp_at_identity(self):
        X = self.random_symmetric(3)
        self.assertMatrixClose(exp_map(np.eye(3), X), exp_map(np.eye(3), TangentVector(np.eye(3), X)))

    def test_distance_is_norm_of_log(self):
        A, B = self.random_spd(4), self.random_spd(4)
        V = log_map(A, B)
        self.assertAlmostEqual(distance(A, B), np.sqrt(metric(A, V, V)), places=9)


class TestGeodesic(BaseTestCase):
    def test_scalar_midpoint(self):
        self.assertMatrixClose(geodesic(np.eye(2), np.diag([4.0, 4.0]), 0.5), 2 * np.eye(2))

    def test_endpoints_and_arc_length(self):
        A, B = self.random_spd(4), self.random_spd(4)
        self.assertMatrixClose(geodesic(A, B, 0.0), A)
        self.assertMatrixClose(geodesic(A, B, 1.0), B, rtol=1e-8, atol=1e-9)
        total = distance(A, B)
        for t in (0.25, 0.5, 0.75):
            self.assertAlmostEqual(distance(A, geodesic(A, B, t)), t * total, delta=1e-9 * max(total, 1.0))

    def test_midpoint(self):
        for _ in range(20):
            n = int(self.rng.integers(2, 7))
            A, B = self.random_spd(n), self.random_spd(n)
            m = geodesic(A, B, 0.5)
            half = distance(A, B) / 2
            self.assertAlmostEqual(distance(A, m), half, delta=1e-9 * max(half, 1.0))
            self.assertAlmostEqual(distance(m, B), half, delta=1e-9 * max(half, 1.0))

    def test_order_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            geodesic(np.eye(2), np.eye(3), 0.5)


class TestDistance(BaseTestCase):
    def test_scalar_matrices(self):
        self.assertAlmostEqual(distance(np.eye(3), np.eye(3)), 0.0, places=14)
        self.assertAlmostEqual(distance(np.eye(3), np.exp(2.0) * np.eye(3)), 2.0 * np.sqrt(3), places=12)

    def test_triangle_inequality(self):
        for _ in range(100):
            n = int(self.rng.integers(2, 7))
            A, B, C = self.random_spd(n), self.random_spd(n), self.random_spd(n)
            self.assertLessEqual(distance(A, C), distance(A, B) + distance(B, C) + 1e-9)

    def test_invariances(self):
        A, B = self.random_spd(5), self.random_spd(5)
        C = self.random_conditioned(5)
        d = distance(A, B)
        self.assertAlmostEqual(distance(B, A), d, delta=1e-9 * d)
        self.assertAlmostEqual(distance(C @ A @ C.T, C @ B @ C.T), d, delta=1e-9 * d)
        self.assertAlmostEqual(distance(np.linalg.inv(A), np.linalg.inv(B)), d, delta=1e-9 * d)


class TestDeterminantSplitting(BaseTestCase):
    def test_split_and_merge(self):
        P = self.random_spd(4)
        unit, coordinate = sl_split(P)
        self.assertAlmostEqual(np.linalg.det(unit), 1.0, places=12)
        self.assertAlmostEqual(coordinate, np.log(np.linalg.det(P)) / 2, places=12)
        self.assertMatrixClose(sl_merge(unit, coordinate), P)

    def test_pythagorean_identity(self):
        for _ in range(100):
            n = int(self.rng.integers(2, 7))
            A, B = self.random_spd(n), self.random_spd(n)
            A1, a = sl_split(A)
            B1, b = sl_split(B)
            expected = distance(A, B) ** 2
            self.assertAlmostEqual(distance(A1, B1) ** 2 + (a - b) ** 2, expected, delta=1e-9 * max(expected, 1.0))
