"""Core linear algebra: validation, Jacobi eigensolver, PSD sqrt, product spectrum."""

import numpy as np
import pytest

from eigb.errors import (
    DimensionMismatch,
    NonFinite,
    NotHermitian,
    NotPositiveSemidefinite,
    NotSquare,
)
from eigb.linalg import (
    Spectrum,
    frobenius_norm,
    hermitian_eig,
    matrix_product,
    product_spectrum,
    psd_sqrt,
    trace,
    validate_hermitian,
    validate_psd,
)

# 3x3 case with integer spectra: A -> (3,-1,-4), B -> (3,2,1), AB -> (3,-3,-8).
A3 = [[1, 2, 0], [2, 1, 0], [0, 0, -4]]
B3 = [[2, -1, 0], [-1, 2, 0], [0, 0, 2]]


def random_hermitian(rng, n, scale=1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return validate_hermitian(scale * (z + z.conj().T) / 2)


def random_psd(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return validate_psd(z @ z.conj().T)


def charpoly_eigenvalues(m):
    """Independent oracle: characteristic polynomial coefficients by the
    Faddeev-LeVerrier recurrence, roots via the companion matrix."""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    coeffs = [1.0 + 0.0j]
    mk = np.zeros_like(m)
    ck = 1.0 + 0.0j
    for k in range(1, n + 1):
        mk = m @ (mk + ck * np.eye(n))
        ck = -np.trace(mk) / k
        coeffs.append(ck)
    return np.roots(coeffs)


class TestValidateHermitian:
    def test_real_symmetric_zero_defect(self):
        h = validate_hermitian([[1, 2], [2, 1]])
        assert h.hermiticity_defect == 0.0

    def test_antisymmetric_rejected(self):
        with pytest.raises(NotHermitian):
            validate_hermitian([[0, 1], [-1, 0]])

    def test_example_matrix_accepted(self):
        h = validate_hermitian(A3)
        assert h.n == 3
        np.testing.assert_allclose(h.matrix, np.array(A3, dtype=complex))

    def test_not_square(self):
        with pytest.raises(NotSquare):
            validate_hermitian([[1, 2, 3], [4, 5, 6]])

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            validate_hermitian([[np.nan, 0], [0, 1]])

    def test_symmetrizes_within_tolerance(self):
        m = [[1.0, 1 + 1e-12], [1 - 1e-12, 2.0]]
        h = validate_hermitian(m)
        assert h.hermiticity_defect <= 3e-12
        np.testing.assert_allclose(h.matrix, h.matrix.conj().T)

    def test_diagonal_made_real(self):
        h = validate_hermitian([[1 + 1e-12j, 0], [0, 2]])
        assert h.matrix[0, 0].imag == 0.0


class TestValidatePsd:
    def test_small_negative_clamped(self):
        b = validate_psd(np.diag([2.0, -1e-12]))
        assert b.min_eigenvalue == pytest.approx(-1e-12, abs=1e-13)
        assert b.spectrum[-1] == 0.0

    def test_indefinite_rejected(self):
        with pytest.raises(NotPositiveSemidefinite):
            validate_psd(np.diag([2.0, -0.5]))


class TestHermitianEig:
    def test_scrambled_diagonal(self):
        d = hermitian_eig(validate_hermitian(np.diag([-1.0, 3.0, -4.0])))
        assert d.spectrum.values == (3.0, -1.0, -4.0)

    def test_example_spectra(self):
        sa = hermitian_eig(validate_hermitian(A3)).spectrum
        sb = hermitian_eig(validate_hermitian(B3)).spectrum
        np.testing.assert_allclose(sa.values, [3, -1, -4], atol=1e-9)
        np.testing.assert_allclose(sb.values, [3, 2, 1], atol=1e-9)

    @pytest.mark.parametrize("seed", range(8))
    def test_reconstruction_and_orthonormality(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 17))
        h = random_hermitian(rng, n, scale=float(rng.uniform(0.1, 50)))
        d = hermitian_eig(h)
        v = d.vectors
        lam = np.array(d.spectrum.values)
        recon = (v * lam) @ v.conj().T
        fro = frobenius_norm(h.matrix)
        assert frobenius_norm(recon - h.matrix) <= 1e-10 * (1 + fro)
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_numpy_eigh(self, seed):
        rng = np.random.default_rng(100 + seed)
        h = random_hermitian(rng, 6)
        ours = hermitian_eig(h).spectrum.values
        theirs = np.sort(np.linalg.eigvalsh(h.matrix))[::-1]
        np.testing.assert_allclose(ours, theirs, atol=1e-10)

    def test_scaling_positive(self):
        rng = np.random.default_rng(7)
        h = random_hermitian(rng, 5)
        base = np.array(hermitian_eig(h).spectrum.values)
        scaled = np.array(hermitian_eig(validate_hermitian(2.5 * h.matrix)).spectrum.values)
        np.testing.assert_allclose(scaled, 2.5 * base, rtol=1e-10, atol=1e-12)

    def test_scaling_negative_reverses(self):
        rng = np.random.default_rng(8)
        h = random_hermitian(rng, 5)
        base = np.array(hermitian_eig(h).spectrum.values)
        flipped = np.array(hermitian_eig(validate_hermitian(-h.matrix)).spectrum.values)
        np.testing.assert_allclose(flipped, -base[::-1], rtol=1e-10, atol=1e-12)

    def test_zero_matrix(self):
        d = hermitian_eig(validate_hermitian(np.zeros((3, 3))))
        assert d.spectrum.values == (0.0, 0.0, 0.0)

    @pytest.mark.parametrize(
        "targets",
        [
            [5.0, 5.0, 5.0, 1.0, 1.0],
            [1.0, 1.0 + 1e-13, 1.0 + 2e-13, 0.5],
            [1e8, 1.0, 1e-8, 0.0],
            [3.0, 1e-10, -1e-10, -3.0],
        ],
        ids=["repeated", "near-degenerate", "wide-range", "sign-cluster"],
    )
    def test_pathological_spectra(self, targets):
        from eigb.harness import _haar_unitary

        rng = np.random.default_rng(17)
        vals = np.array(targets)
        q = _haar_unitary(rng, len(vals))
        h = validate_hermitian((q * vals) @ q.conj().T)
        d = hermitian_eig(h)
        got = np.array(d.spectrum.values)
        want = np.sort(vals)[::-1]
        assert np.max(np.abs(got - want)) <= 1e-10 * (1 + np.abs(vals).max())
        v = d.vectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(len(vals)))) <= 1e-10


class TestPsdSqrt:
    def test_identity(self):
        r = psd_sqrt(validate_psd(np.eye(3)))
        np.testing.assert_allclose(r.matrix, np.eye(3), atol=1e-12)

    def test_diagonal(self):
        r = psd_sqrt(validate_psd(np.diag([4.0, 9.0])))
        np.testing.assert_allclose(r.matrix, np.diag([2.0, 3.0]), atol=1e-12)

    def test_example_square_recovers(self):
        b = validate_psd(B3)
        r = psd_sqrt(b).matrix
        np.testing.assert_allclose(r @ r, np.array(B3, dtype=complex), atol=1e-10)

    def test_projection_idempotent(self):
        rng = np.random.default_rng(3)
        z = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        q, _ = np.linalg.qr(z)
        proj = q @ q.conj().T
        b = validate_psd(proj, tol=1e-8)
        np.testing.assert_allclose(psd_sqrt(b).matrix, proj, atol=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_square_recovers_random(self, seed):
        rng = np.random.default_rng(400 + seed)
        b = random_psd(rng, int(rng.integers(2, 9)))
        r = psd_sqrt(b).matrix
        defect = frobenius_norm(r @ r - b.matrix)
        assert defect <= 1e-10 * (1 + frobenius_norm(b.matrix))

    def test_accepts_hermitian_wrapper(self):
        h = validate_hermitian(np.diag([4.0, 1.0]))
        b = validate_psd(h)
        assert b.hermitian is h
        np.testing.assert_allclose(psd_sqrt(b).matrix, np.diag([2.0, 1.0]), atol=1e-12)


class TestEigensolverEdges:
    def test_one_by_one(self):
        d = hermitian_eig(validate_hermitian([[7.0]]))
        assert d.spectrum.values == (7.0,)
        assert d.vectors[0, 0] == 1.0

    def test_no_convergence_surface(self, monkeypatch):
        import eigb.linalg as linalg
        from eigb.errors import NoConvergence

        monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
        with pytest.raises(NoConvergence):
            linalg.hermitian_eig(validate_hermitian([[1, 1], [1, 1]]))


class TestProductSpectrum:
    def test_example_values(self):
        spec = product_spectrum(validate_hermitian(A3), validate_psd(B3))
        np.testing.assert_allclose(spec.values, [3, -3, -8], atol=1e-9)

    def test_identity_b(self):
        rng = np.random.default_rng(11)
        a = random_hermitian(rng, 5)
        spec = product_spectrum(a, validate_psd(np.eye(5)))
        np.testing.assert_allclose(spec.values, hermitian_eig(a).spectrum.values, atol=1e-10)

    def test_positive_scaling(self):
        rng = np.random.default_rng(12)
        a = random_hermitian(rng, 4)
        b = random_psd(rng, 4)
        base = np.array(product_spectrum(a, b).values)
        scaled = np.array(product_spectrum(a, validate_psd(3.0 * b.matrix)).values)
        np.testing.assert_allclose(scaled, 3.0 * base, rtol=1e-9, atol=1e-10)

    def test_against_charpoly_rootfinder(self):
        rng = np.random.default_rng(7)
        a = random_psd(rng, 4)
        b = random_psd(rng, 4)
        ours = np.array(product_spectrum(a.hermitian, b).values)
        roots = charpoly_eigenvalues(a.matrix @ b.matrix)
        assert np.max(np.abs(roots.imag)) < 1e-8
        theirs = np.sort(roots.real)[::-1]
        np.testing.assert_allclose(ours, theirs, rtol=1e-8, atol=1e-8)

    def test_general_hermitian_against_charpoly(self):
        rng = np.random.default_rng(21)
        a = random_hermitian(rng, 4)
        b = random_psd(rng, 4)
        ours = np.array(product_spectrum(a, b).values)
        roots = charpoly_eigenvalues(a.matrix @ b.matrix)
        assert np.max(np.abs(roots.imag)) < 1e-8
        np.testing.assert_allclose(ours, np.sort(roots.real)[::-1], rtol=1e-8, atol=1e-8)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            product_spectrum(validate_hermitian(np.eye(2)), validate_psd(np.eye(3)))

    def test_sum_matches_trace(self):
        rng = np.random.default_rng(13)
        a = random_hermitian(rng, 6)
        b = random_psd(rng, 6)
        spec_sum = product_spectrum(a, b).sum()
        tr = trace(matrix_product(a.matrix, b.matrix))
        scale = 1 + frobenius_norm(a.matrix) * frobenius_norm(b.matrix)
        assert abs(tr.imag) <= 1e-9 * scale
        assert abs(spec_sum - tr.real) <= 1e-9 * scale


class TestSmallOps:
    def test_trace_identity(self):
        assert trace(np.eye(3)) == 3.0

    def test_example_trace(self):
        prod = matrix_product(np.array(A3, dtype=complex), np.array(B3, dtype=complex))
        assert trace(prod) == pytest.approx(-8.0, abs=1e-12)
        spec = product_spectrum(validate_hermitian(A3), validate_psd(B3))
        assert spec.sum() == pytest.approx(-8.0, abs=1e-9)

    def test_frobenius_zero(self):
        assert frobenius_norm(np.zeros((2, 2))) == 0.0

    def test_product_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            matrix_product(np.eye(2), np.eye(3))

    def test_trace_needs_square(self):
        with pytest.raises(DimensionMismatch):
            trace(np.ones((2, 3)))


class TestSpectrum:
    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            Spectrum(values=(1.0, 2.0))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Spectrum(values=())

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            Spectrum(values=(float("nan"),))
