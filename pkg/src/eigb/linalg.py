"""Dense complex-matrix foundation.

Validated Hermitian and positive-semidefinite matrix types, a cyclic
complex Jacobi eigensolver, the PSD square root, and the real spectrum of
a Hermitian times PSD product computed through the symmetric conjugation
B^(1/2) A B^(1/2).  The product spectrum is never obtained from a general
eigensolver on A@B: conjugating keeps the problem Hermitian, so realness
of the result is structural rather than numerical.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Iterator

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NonFinite,
    NotHermitian,
    NotPositiveSemidefinite,
    NotSquare,
)

# Default construction tolerances (relative).
TOL_HERM = 1e-9
TOL_PSD = 1e-9

# Cyclic Jacobi: off-diagonal Frobenius target relative to ||A||_F, sweep cap.
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60


def ensure_matrix(entries) -> np.ndarray:
    """Coerce to a square complex128 array with finite entries.

    Raises NotSquare for non-square input and NonFinite if any entry is
    NaN or infinite.
    """
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise NonFinite("matrix contains NaN or infinite entries")
    return m


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues in non-increasing order."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) == 0:
            raise ValueError("spectrum must contain at least one value")
        if any(not np.isfinite(v) for v in vals):
            raise ValueError("spectrum values must be finite")
        for a, b in zip(vals, vals[1:]):
            if a < b:
                raise ValueError("spectrum values must be non-increasing")

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def sum(self) -> float:
        return float(sum(self.values))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectrum plus matching orthonormal eigenvector columns."""

    spectrum: Spectrum
    vectors: np.ndarray


@dataclass(frozen=True)
class HermitianMatrix:
    """Symmetrized square complex matrix with its recorded hermiticity defect."""

    matrix: np.ndarray
    hermiticity_defect: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class PSDMatrix:
    """Hermitian matrix validated as positive semidefinite.

    The eigendecomposition computed during validation is kept so the
    square root and downstream spectra reuse it.  `spectrum` clamps
    within-tolerance negative eigenvalues to zero.
    """

    hermitian: HermitianMatrix
    eig: EigenDecomposition
    min_eigenvalue: float

    @property
    def matrix(self) -> np.ndarray:
        return self.hermitian.matrix

    @property
    def n(self) -> int:
        return self.hermitian.n

    @property
    def spectrum(self) -> Spectrum:
        return Spectrum(tuple(max(v, 0.0) for v in self.eig.spectrum))


def validate_hermitian(entries, tol: float = TOL_HERM) -> HermitianMatrix:
    """Symmetrize and accept a matrix as Hermitian within `tol` (relative).

    The defect max|M - M*| is measured before symmetrization; rejection
    threshold is tol * max(1, max|entry|).
    """
    m = ensure_matrix(entries)
    defect = float(np.max(np.abs(m - m.conj().T)))
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if defect > tol * scale:
        raise NotHermitian(defect, tol * scale)
    sym = (m + m.conj().T) / 2.0
    # Diagonal of (M + M*)/2 is real in exact arithmetic; force it so.
    np.fill_diagonal(sym, sym.diagonal().real)
    return HermitianMatrix(matrix=sym, hermiticity_defect=defect)


def validate_psd(entries, tol: float = TOL_PSD, herm_tol: float = TOL_HERM) -> PSDMatrix:
    """Accept a Hermitian matrix as PSD within `tol` (relative to max(1, lambda_1))."""
    herm = entries if isinstance(entries, HermitianMatrix) else validate_hermitian(entries, herm_tol)
    eig = hermitian_eig(herm)
    lo = eig.spectrum[-1]
    threshold = tol * max(1.0, eig.spectrum[0])
    if lo < -threshold:
        raise NotPositiveSemidefinite(lo, threshold)
    return PSDMatrix(hermitian=herm, eig=eig, min_eigenvalue=lo)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply one unitary rotation zeroing a[p, q] (and a[q, p]) in place.

    The rotation diagonalizes the 2x2 Hermitian block: phase-align the
    off-diagonal entry, then a real Givens rotation with the smaller-root
    tangent for stability.
    """
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if theta >= 0.0:
        t = 1.0 / (theta + sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
    c = 1.0 / sqrt(t * t + 1.0)
    s = t * c

    # Columns: M <- M J with J[p,p]=J[q,q]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase).
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * np.conj(phase) * col_q
    a[:, q] = s * phase * col_p + c * col_q
    # Rows: M <- J* M.
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * phase * row_q
    a[q, :] = s * np.conj(phase) * row_p + c * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - s * np.conj(phase) * vec_q
    v[:, q] = s * phase * vec_p + c * vec_q


def _off_norm(a: np.ndarray) -> float:
    # Summed directly over off-diagonal entries: subtracting the diagonal
    # mass from the total norm would cancel catastrophically once the
    # off-diagonal part is small.
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def hermitian_eig(a: HermitianMatrix) -> EigenDecomposition:
    """Full eigendecomposition by cyclic complex Jacobi rotations.

    Sweeps annihilate every off-diagonal pair in turn until the
    off-diagonal Frobenius norm drops below JACOBI_TOL * ||A||_F.  Raises
    NoConvergence if JACOBI_MAX_SWEEPS sweeps do not reach the target
    (which for Hermitian input they always should: convergence is
    quadratic once the off-diagonal mass is small).
    """
    work = a.matrix.astype(np.complex128, copy=True)
    n = work.shape[0]
    vectors = np.eye(n, dtype=np.complex128)
    norm = float(np.linalg.norm(work))
    if n == 1 or norm == 0.0:
        return _finish_eig(work, vectors)

    target = JACOBI_TOL * norm
    # Skipping rotations below this per-element threshold still guarantees
    # off-norm < target after a quiet sweep: off <= n * threshold.
    threshold = target / n
    sweeps = 0
    while sweeps < JACOBI_MAX_SWEEPS:
        if _off_norm(work) <= target:
            return _finish_eig(work, vectors)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > threshold:
                    _jacobi_rotate(work, vectors, p, q)
        sweeps += 1
    residual = _off_norm(work)
    if residual <= target:
        return _finish_eig(work, vectors)
    raise NoConvergence(sweeps, residual)


def _finish_eig(work: np.ndarray, vectors: np.ndarray) -> EigenDecomposition:
    values = work.diagonal().real.copy()
    order = np.argsort(-values, kind="stable")
    spectrum = Spectrum(tuple(float(v) for v in values[order]))
    return EigenDecomposition(spectrum=spectrum, vectors=vectors[:, order])


def psd_sqrt(b: PSDMatrix) -> HermitianMatrix:
    """Unique PSD square root via the cached eigendecomposition of B.

    Within-tolerance negative eigenvalues are clamped to zero before the
    square root, so the result is real-spectrum PSD by construction.
    """
    vals = np.array([max(v, 0.0) for v in b.eig.spectrum])
    vecs = b.eig.vectors
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return validate_hermitian(root)


def product_spectrum(a: HermitianMatrix, b: PSDMatrix) -> Spectrum:
    """Real spectrum of A@B, computed as the spectrum of B^(1/2) A B^(1/2).

    The two matrices share their eigenvalues whenever B is PSD; the
    conjugated form is Hermitian, which keeps the whole computation inside
    the Hermitian eigensolver.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"A is {a.n}x{a.n} but B is {b.n}x{b.n}")
    root = psd_sqrt(b).matrix
    conjugated = root @ a.matrix @ root
    return hermitian_eig(validate_hermitian(conjugated)).spectrum


def matrix_product(x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.ndim != 2 or y.ndim != 2 or x.shape[1] != y.shape[0]:
        raise DimensionMismatch(f"cannot multiply shapes {x.shape} and {y.shape}")
    return x @ y


def trace(x) -> complex:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"trace needs a square matrix, got shape {x.shape}")
    return complex(np.trace(x))


def frobenius_norm(x) -> float:
    return float(np.linalg.norm(np.asarray(x, dtype=np.complex128)))
