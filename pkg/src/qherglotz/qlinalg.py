"""Spectral theory of Hermitian quaternionic matrices via the adjoint embedding.

The right eigenvalues of a Hermitian quaternionic matrix are real, and the
complex embedding chi doubles each of them: the spectrum of chi(A) is the
quaternionic spectrum with every multiplicity multiplied by two.  All
routines here therefore run the cyclic Jacobi solver on chi(A) and fold
paired eigenvalues back down.

Tolerances are relative to ``scale = max(1, largest entry magnitude)``.
Negative eigenvalue dust in [-1e-10 * scale, 0) is clamped to zero before
square roots and pseudo-inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._jacobi import eigh_c
from .errors import (BlockNotPSD, NotHermitian, NotPSD, ShapeError,
                     SymmetryViolation)
from .quatcore import QMatrix, adjoint, chi_embed, chi_inverse, scale_of

__all__ = [
    "Inertia",
    "hermitian_eigen",
    "psd_sqrt",
    "pinv_psd",
    "extract_contraction",
    "psd_complete_3x3",
    "op_norm",
]

HERMITIAN_TOL = 1e-10    # relative symmetry defect accepted by hermitian_eigen
ZERO_EIG_RTOL = 1e-10    # inertia zero threshold and rank cutoff, relative
PSD_TOL = 1e-10          # relative PSD tolerance for sqrt / pinv inputs
BLOCK_PSD_TOL = 1e-8     # looser tolerance for assembled block hypotheses
CHI_RESTORE_TOL = 1e-6   # sanity cap on spectral reconstruction defects


@dataclass(frozen=True)
class Inertia:
    """Signature data of a Hermitian quaternionic matrix.

    ``eigenvalues`` holds the quaternionic spectrum (already folded down
    from the doubled chi spectrum), sorted ascending.  Counts use the zero
    threshold 1e-10 * scale.
    """

    neg: int
    zero: int
    pos: int
    eigenvalues: tuple[float, ...]

    @property
    def dim(self) -> int:
        return self.neg + self.zero + self.pos


def _hermitian_defect(A: QMatrix) -> float:
    return (A - adjoint(A)).max_entry()


def _require_hermitian(A: QMatrix, label: str = "matrix") -> None:
    if A.rows != A.cols:
        raise ShapeError(f"{label} must be square, got {A.shape}")
    defect = _hermitian_defect(A)
    if defect > HERMITIAN_TOL * scale_of(A):
        raise NotHermitian(
            f"{label} symmetry defect {defect:.3e} exceeds tolerance")


def _chi_eigensystem(A: QMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Full (doubled) spectrum and eigenvectors of chi(A)."""
    return eigh_c(chi_embed(A))


def _fold(w2: np.ndarray) -> np.ndarray:
    """Halve the doubled chi spectrum by averaging adjacent sorted pairs."""
    return 0.5 * (w2[0::2] + w2[1::2])


def hermitian_eigen(A: QMatrix) -> Inertia:
    """Quaternionic eigenvalues and signature counts of a Hermitian matrix.

    Raises NotHermitian when the symmetry defect exceeds 1e-10 * scale and
    NoConvergence if the Jacobi sweeps stall (not observed in practice).
    """
    _require_hermitian(A)
    w2, _ = _chi_eigensystem(A)
    w = _fold(w2)
    tol = ZERO_EIG_RTOL * scale_of(A)
    neg = int(np.sum(w < -tol))
    pos = int(np.sum(w > tol))
    return Inertia(neg=neg, zero=len(w) - neg - pos, pos=pos,
                   eigenvalues=tuple(float(x) for x in w))


def _chi_restore(m: np.ndarray) -> QMatrix:
    """Quaternionic form of a numerically chi-structured complex matrix.

    Spectral reconstructions (v * f(w)) v^H break the exact block symmetry
    at the eigensolver residual level, amplified by f near eigenvalue
    clusters (sqrt at near-zero clusters is the worst case), so the result
    is projected onto the structured subspace instead of asserted exact.
    Defects beyond 1e-6 * scale signal a genuine error and still raise.
    """
    n = m.shape[0] // 2
    m11, m12 = m[:n, :n], m[:n, n:]
    m21, m22 = m[n:, :n], m[n:, n:]
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    defect = max(float(np.abs(m11 - m22.conj()).max(initial=0.0)),
                 float(np.abs(m12 + m21.conj()).max(initial=0.0)))
    if defect > CHI_RESTORE_TOL * scale:
        raise SymmetryViolation(
            f"spectral reconstruction defect {defect:.3e} exceeds "
            f"{CHI_RESTORE_TOL:.0e} * scale")
    return QMatrix(0.5 * (m11 + m22.conj()), 0.5 * (m12 - m21.conj()))


def _spectral_map(A: QMatrix, fn: Callable[[np.ndarray], np.ndarray],
                  psd_label: str | None = None) -> QMatrix:
    """Apply a spectral function through the chi eigensystem.

    With ``psd_label`` set, eigenvalues below -PSD_TOL * scale raise NotPSD
    and the remaining negative dust is clamped to zero before ``fn``.
    """
    _require_hermitian(A, psd_label or "matrix")
    w2, v = _chi_eigensystem(A)
    if psd_label is not None:
        tol = PSD_TOL * scale_of(A)
        if w2.size and float(w2[0]) < -tol:
            raise NotPSD(
                f"{psd_label} has eigenvalue {w2[0]:.6e} < -{tol:.3e}")
        w2 = np.where(w2 < 0.0, 0.0, w2)
    m = (v * fn(w2)) @ v.conj().T
    return _chi_restore(m)


def psd_sqrt(A: QMatrix) -> QMatrix:
    """Hermitian PSD square root computed in the complex embedding."""
    return _spectral_map(A, np.sqrt, psd_label="psd_sqrt input")


def pinv_psd(A: QMatrix) -> QMatrix:
    """Moore-Penrose inverse of a PSD matrix.

    Eigenvalues within 1e-10 (relative to the largest) of zero are treated
    as exact zeros.
    """

    def recip(w2: np.ndarray) -> np.ndarray:
        wmax = float(w2.max()) if w2.size else 0.0
        cut = ZERO_EIG_RTOL * wmax
        out = np.zeros_like(w2)
        live = w2 > cut
        out[live] = 1.0 / w2[live]
        return out

    return _spectral_map(A, recip, psd_label="pinv_psd input")


def _sqrt_and_pinv_sqrt(A: QMatrix, label: str) -> tuple[QMatrix, QMatrix]:
    """One eigensystem, two spectral functions: A^(1/2) and pinv(A^(1/2))."""
    _require_hermitian(A, label)
    w2, v = _chi_eigensystem(A)
    tol = PSD_TOL * scale_of(A)
    if w2.size and float(w2[0]) < -tol:
        raise NotPSD(f"{label} has eigenvalue {w2[0]:.6e} < -{tol:.3e}")
    w2 = np.where(w2 < 0.0, 0.0, w2)
    # rank cutoff on the original eigenvalue scale: sqrt compresses the
    # dynamic range, so thresholding the roots would resurrect noise
    # eigenvalues (1e-16 * scale becomes a 1e-8 root) and invert them
    wmax = float(w2.max()) if w2.size else 0.0
    cut = ZERO_EIG_RTOL * wmax
    live = w2 > cut
    roots = np.sqrt(w2)
    inv = np.zeros_like(roots)
    inv[live] = 1.0 / roots[live]
    sq = _chi_restore((v * roots) @ v.conj().T)
    pi = _chi_restore((v * inv) @ v.conj().T)
    return sq, pi


def _assemble_2x2(A: QMatrix, B: QMatrix, C: QMatrix) -> QMatrix:
    top = np.hstack([A.p1, B.p1]), np.hstack([A.p2, B.p2])
    bs = adjoint(B)
    bot = np.hstack([bs.p1, C.p1]), np.hstack([bs.p2, C.p2])
    return QMatrix(np.vstack([top[0], bot[0]]), np.vstack([top[1], bot[1]]))


def extract_contraction(A: QMatrix, B: QMatrix, C: QMatrix) -> QMatrix:
    """Contraction G with B = A^(1/2) G C^(1/2) from a PSD block matrix.

    Given [[A, B], [B*, C]] positive semidefinite, returns
    G = pinv(A^(1/2)) B pinv(C^(1/2)), which has operator norm at most 1
    up to roundoff.  Raises BlockNotPSD when the block matrix has an
    eigenvalue below -1e-8 * scale, NotPSD when A or C alone fails.
    """
    if B.rows != A.rows or B.cols != C.rows:
        raise ShapeError(
            f"incompatible corner shapes {A.shape}, {B.shape}, {C.shape}")
    _, pinv_sa = _sqrt_and_pinv_sqrt(A, "upper-left block")
    _, pinv_sc = _sqrt_and_pinv_sqrt(C, "lower-right block")
    block = _assemble_2x2(A, B, C)
    if block.rows:
        w2, _ = _chi_eigensystem(block)
        floor = -BLOCK_PSD_TOL * scale_of(block)
        if float(w2[0]) < floor:
            raise BlockNotPSD(
                f"block matrix eigenvalue {w2[0]:.6e} below {floor:.3e}")
    return pinv_sa @ B @ pinv_sc


def psd_complete_3x3(A: QMatrix, B: QMatrix, C: QMatrix,
                     D: QMatrix, E: QMatrix) -> QMatrix:
    """Corner X making [[A, B, X], [B*, C, D], [X*, D*, E]] PSD.

    Both 2x2 hypothesis blocks [[A, B], [B*, C]] and [[C, D], [D*, E]]
    must be PSD (BlockNotPSD otherwise).  The corner is
    X = A^(1/2) G1 G2 E^(1/2) built from the two extracted contractions;
    with zero-width C the contractions are empty maps and X = 0.
    """
    g1 = extract_contraction(A, B, C)
    g2 = extract_contraction(C, D, E)
    sqrt_a, _ = _sqrt_and_pinv_sqrt(A, "upper-left block")
    sqrt_e, _ = _sqrt_and_pinv_sqrt(E, "lower-right block")
    return sqrt_a @ g1 @ g2 @ sqrt_e


def op_norm(P: QMatrix) -> float:
    """Operator (largest singular value) norm, computed through chi."""
    if P.p1.size == 0:
        return 0.0
    m = chi_embed(P)
    w, _ = eigh_c(m.conj().T @ m)
    top = float(w[-1])
    return float(np.sqrt(top)) if top > 0.0 else 0.0
