import itertools

import numpy as np
import scipy.linalg

from core.canonical import (
    RjaSignature,
    RjsSignature,
    commutant_basis,
    lambda_matrix,
    omega_matrix,
    rja_matrix,
    rja_orthogonal_conjugator,
    rja_signature,
    rjs_conjugator,
    rjs_conjugator_normalized,
    rjs_matrix,
    spectral_signature,
    stabilizer_residual,
    symplectic_form,
    symplectic_frame,
    theta_matrix,
)
from core.linalg import is_orthogonal, rotation
from errors import NonConstantModulus, NotOrthogonal, NotSemisimple
from tests.base import CONDITION_SPREAD, BaseTestCase, EllipticTestCase

RJS_SIGNATURES = [
    RjsSignature(1.0, p=2),
    RjsSignature(1.0, p=1, q=1),
    RjsSignature(1.0, rotation_blocks=((np.pi / 3, 1),)),
    RjsSignature(1.0, p=1, q=2, rotation_blocks=((0.4, 1),)),
    RjsSignature(1.0, p=1, rotation_blocks=((0.7, 2), (2.1, 1))),
    RjsSignature(2.0, q=1, rotation_blocks=((np.pi / 2, 1),)),
]

RJA_SIGNATURES = [
    RjaSignature(1.0, p=1, q=2),
    RjaSignature(1.0, k=2),
    RjaSignature(1.0, mixed_blocks=((np.pi / 6, 1, 1),)),
    RjaSignature(1.0, p=1, k=1, mixed_blocks=((0.3, 2, 0), (1.1, 1, 1))),
    RjaSignature(1.0, q=1, mixed_blocks=((np.pi / 3, 0, 2),)),
]


def commutator_kernel_dimension(J: np.ndarray) -> int:
    n = J.shape[0]
    operator = np.kron(np.eye(n), J) - np.kron(J.T, np.eye(n))
    singular_values = scipy.linalg.svd(operator, compute_uv=False)
    return int(np.sum(singular_values <= 1e-9 * max(singular_values.max(), 1.0)))


class TestNamedMatrices(BaseTestCase):
    def test_symplectic_frame(self):
        for k in range(1, 5):
            W = symplectic_frame(k)
            self.assertTrue(is_orthogonal(W))
            self.assertMatrixClose(W @ symplectic_form(k) @ W.T, lambda_matrix(k))

    def test_theta_and_omega(self):
        self.assertMatrixClose(omega_matrix(1, 3), np.diag([1.0, -1.0, -1.0]))
        Theta = theta_matrix(0.5, 1, 1)
        self.assertMatrixClose(Theta[:2, :2], rotation(0.5))
        self.assertMatrixClose(Theta[2:, 2:], -rotation(0.5))

    def test_stabilizer_residual(self):
        self.assertLess(stabilizer_residual(rotation(0.3), np.eye(2)), 1e-15)
        self.assertGreater(stabilizer_residual(2 * np.eye(2), np.eye(2)), 1.0)


class TestSignatures(BaseTestCase):
    def test_invalid_signatures(self):
        with self.assertRaises(ValueError):
            RjsSignature(1.0, rotation_blocks=((np.pi, 1),))
        with self.assertRaises(ValueError):
            RjsSignature(-1.0, p=1)
        with self.assertRaises(ValueError):
            RjaSignature(1.0, mixed_blocks=((np.pi / 2, 1, 0),))
        with self.assertRaises(ValueError):
            RjaSignature(1.0)

    def test_rotation_plus_identity(self):
        M = scipy.linalg.block_diag(rotation(np.pi / 3), 1.0)
        sig = spectral_signature(M)
        self.assertAlmostEqual(sig.modulus, 1.0, places=12)
        self.assertEqual((sig.p, sig.q, sig.r), (1, 0, 1))
        self.assertAlmostEqual(sig.rotation_blocks[0][0], np.pi / 3, places=10)

    def test_not_semisimple(self):
        with self.assertRaises(NotSemisimple):
            spectral_signature(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_non_constant_modulus(self):
        with self.assertRaises(NonConstantModulus):
            spectral_signature(np.diag([2.0, 0.5]))

    def test_similarity_recovers_signature(self):
        for sig in RJS_SIGNATURES:
            C = self.random_conditioned(sig.order)
            M = C @ rjs_matrix(sig) @ np.linalg.inv(C)
            found = spectral_signature(M)
            self.assertEqual((found.p, found.q), (sig.p, sig.q))
            self.assertEqual([m for _, m in found.rotation_blocks], [m for _, m in sig.rotation_blocks])
            self.assertAlmostEqual(found.modulus, sig.modulus, places=9)

    def test_transpose_has_same_signature(self):
        for sig in RJS_SIGNATURES:
            C = self.random_conditioned(sig.order)
            M = C @ rjs_matrix(sig) @ np.linalg.inv(C)
            direct, transposed = spectral_signature(M), spectral_signature(M.T)
            self.assertEqual((direct.p, direct.q), (transposed.p, transposed.q))
            self.assertEqual(len(direct.rotation_blocks), len(transposed.rotation_blocks))
            for (a, m), (b, k) in zip(direct.rotation_blocks, transposed.rotation_blocks):
                self.assertAlmostEqual(a, b, places=8)
                self.assertEqual(m, k)
            self.assertAlmostEqual(direct.modulus, transposed.modulus, places=10)

    def test_rja_folding(self):
        M = scipy.linalg.block_diag(rotation(0.3), rotation(np.pi - 0.3), rotation(np.pi / 2), 1.0)
        sig = rja_signature(M)
        self.assertEqual((sig.p, sig.q, sig.k), (1, 0, 1))
        self.assertEqual(len(sig.mixed_blocks), 1)
        phi, mu, nu = sig.mixed_blocks[0]
        self.assertAlmostEqual(phi, 0.3, places=10)
        self.assertEqual((mu, nu), (1, 1))


class TestConjugators(EllipticTestCase):
    def test_rjs_reassembly(self):
        for i in range(200):
            n = 2 + i % 7
            sig = self.random_rjs_signature(n, modulus=float(np.exp(self.rng.uniform(-1, 1))))
            C = self.random_conditioned(n, CONDITION_SPREAD)
            M = C @ rjs_matrix(sig) @ np.linalg.inv(C)
            J, F0 = rjs_conjugator(M)
            residual = np.linalg.norm(F0 @ J @ np.linalg.inv(F0) - M)
            self.assertLessEqual(residual, 1e-8 * np.linalg.norm(M))

    def test_rjs_fast_path(self):
        J, F0 = rjs_conjugator(omega_matrix(2, 4))
        self.assertMatrixClose(F0, np.eye(4))
        self.assertMatrixClose(J, omega_matrix(2, 4))

    def test_rjs_normalized(self):
        sig = RJS_SIGNATURES[3]
        C = self.random_conditioned(sig.order)
        M = C @ rjs_matrix(sig) @ np.linalg.inv(C)
        _, F0 = rjs_conjugator_normalized(M)
        self.assertAlmostEqual(np.linalg.det(F0) ** 2, abs(np.linalg.det(M)), places=9)

    def test_rja_orthogonal_conjugator(self):
        for sig in RJA_SIGNATURES:
            Z0 = self.random_orthogonal(sig.order)
            U = Z0 @ rja_matrix(sig) @ Z0.T
            J, Z = rja_orthogonal_conjugator(U)
            self.assertMatrixClose(J, rja_matrix(sig), atol=1e-9)
            self.assertTrue(is_orthogonal(Z, 1e-9))
            self.assertMatrixClose(Z @ J @ Z.T, U, atol=1e-9)

    def test_rja_requires_orthogonal(self):
        with self.assertRaises(NotOrthogonal):
            rja_orthogonal_conjugator(2 * np.eye(2))

    def test_rja_square_is_rjs_of_square(self):
        for sig, _ in itertools.product(RJA_SIGNATURES, range(20)):
            C = self.random_conditioned(sig.order)
            A = C @ rja_matrix(sig) @ np.linalg.inv(C)
            J_tilde = rja_matrix(rja_signature(A))
            self.assertMatrixClose(J_tilde @ J_tilde, rjs_matrix(spectral_signature(A @ A)), atol=1e-10)


class TestCommutant(BaseTestCase):
    def test_dimension_matches_commutator_kernel(self):
        signatures = []
        for p, q in itertools.product(range(3), repeat=2):
            for blocks in [(), ((0.5, 1),), ((0.5, 2),), ((0.5, 1), (1.9, 1))]:
                if p + q + 2 * sum(m for _, m in blocks) in range(1, 9):
                    signatures.append(RjsSignature(1.0, p=p, q=q, rotation_blocks=blocks))
        for sig in signatures:
            J = rjs_matrix(sig)
            basis = commutant_basis(sig)
            expected = sig.p**2 + sig.q**2 + 2 * sum(m * m for _, m in sig.rotation_blocks)
            self.assertEqual(len(basis), expected)
            self.assertEqual(commutator_kernel_dimension(J), expected)
            for X in basis:
                self.assertMatrixClose(J @ X, X @ J, atol=1e-12)
