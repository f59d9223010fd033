import numpy as np

from core.canonical import RjsSignature, rjs_matrix
from core.linalg import direct_sum
from errors import BlockExtractionFailure, NotAFixedPoint
from geometry.isometry import Family, IsometrySpec
from locus.fixlocus import fix_locus, membership
from locus.sampler import sample_point
from locus.splitting import DeltaSplitting, block_layout, delta_splitting_coords, delta_splitting_inverse
from tests.base import EllipticTestCase


class TestDeltaSplitting(EllipticTestCase):
    def canonical_descriptor(self):
        sig = RjsSignature(2.0, p=2, q=1, rotation_blocks=((0.5, 1),))
        return fix_locus(IsometrySpec(rjs_matrix(sig), use_delta=True))

    def test_layout(self):
        sig = RjsSignature(1.0, p=2, q=1, rotation_blocks=((0.5, 1), (1.9, 2)))
        self.assertEqual(block_layout(sig), [(0, 2, False), (2, 2, True), (4, 4, True), (8, 1, False)])

    def test_unit_blocks_have_zero_coordinates(self):
        desc = self.canonical_descriptor()
        F = desc.conjugator
        P = F @ np.eye(5) @ F.T
        splitting = delta_splitting_coords(desc, P)
        self.assertEqual(len(splitting.coordinates), 2)
        np.testing.assert_allclose(splitting.coordinates, [0.0, 0.0], atol=1e-12)

    def test_scaling_first_block(self):
        desc = self.canonical_descriptor()
        F = desc.conjugator
        A = self.random_spd(2)
        A = A / np.linalg.det(A) ** 0.5
        base = direct_sum([A, np.eye(2), np.eye(1)])
        shifted = direct_sum([np.exp(1 / 2) * A, np.eye(2), np.exp(-1.0) * np.eye(1)])
        before = delta_splitting_coords(desc, F @ base @ F.T)
        after = delta_splitting_coords(desc, F @ shifted @ F.T)
        self.assertAlmostEqual(after.coordinates[0] - before.coordinates[0], 1.0, places=12)
        self.assertAlmostEqual(after.coordinates[1], before.coordinates[1], places=12)

    def test_round_trip(self):
        for i in range(50):
            n = 2 + i % 6
            spec = self.random_elliptic_spec(Family.GAMMA_DELTA, n)
            desc = fix_locus(spec)
            P = sample_point(desc, seed=i)
            splitting = delta_splitting_coords(desc, P)
            self.assertEqual(len(splitting.coordinates), len(block_layout(desc.signature)) - 1)
            for block in splitting.blocks:
                self.assertAlmostEqual(np.linalg.det(block), 1.0, delta=1e-10)
            restored = delta_splitting_inverse(desc, splitting)
            self.assertLessEqual(np.linalg.norm(restored - P), 1e-9 * np.linalg.norm(P))
            self.assertTrue(membership(spec, restored))

    def test_inverse_of_new_coordinates(self):
        desc = self.canonical_descriptor()
        splitting = delta_splitting_coords(desc, sample_point(desc, seed=4))
        moved = delta_splitting_inverse(desc, DeltaSplitting(splitting.blocks, [0.3, -1.2]))
        np.testing.assert_allclose(delta_splitting_coords(desc, moved).coordinates, [0.3, -1.2], atol=1e-10)

    def test_rejects_points_off_the_locus(self):
        desc = self.canonical_descriptor()
        F = desc.conjugator
        with self.assertRaises(NotAFixedPoint):
            delta_splitting_coords(desc, F @ (3 * np.eye(5)) @ F.T)
        coupled = np.eye(5)
        coupled[0, 4] = coupled[4, 0] = 0.5
        with self.assertRaises(BlockExtractionFailure):
            delta_splitting_coords(desc, F @ coupled @ F.T)
        twisted = direct_sum([np.eye(2), np.diag([2.0, 0.5]), np.eye(1)])
        with self.assertRaises(BlockExtractionFailure):
            delta_splitting_coords(desc, F @ twisted @ F.T)

    def test_requires_delta_family(self):
        desc = fix_locus(IsometrySpec(np.eye(3)))
        with self.assertRaises(ValueError):
            delta_splitting_coords(desc, np.eye(3))
