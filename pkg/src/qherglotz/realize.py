"""Finite Pontryagin-space realizations of Hermitian moment sequences.

State space is H^d with indefinite inner product [x, y] = y* J x for a
signature matrix J = diag(+-1); kappa counts the -1 entries.  A J-unitary
U (U* J U = J) and a state-to-output map C give moments ::

    r(n) = C* J U^n C,       U^(-1) = J U* J for negative powers,

and any sequence of this shape has at most kappa negative squares: a Gram
matrix of vectors in a space of negative index kappa cannot have more than
kappa negative eigenvalues.

The dilation route for the Hilbert case (kappa = 0) embeds a coisometry V
into the unitary [[V*, I - V* V], [0, V]]; powers compress back onto the
original corner because the block triangle is preserved under products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (DegenerateSeed, NoUnitaryAlignment, NotCoisometry,
                     NotJUnitary, ShapeError, SpanDeficient)
from .moments import HermitianSequence, negative_squares
from .quatcore import (QMatrix, adjoint, chi_embed, chi_inverse, qhstack,
                       random_qmatrix, scale_of)

__all__ = [
    "SignatureGram",
    "PontryaginRealization",
    "moment",
    "moment_sequence",
    "verify_negative_squares_bound",
    "dilate_coisometry",
    "random_j_unitary",
    "align_realizations",
]

J_UNITARY_TOL = 1e-10     # relative defect accepted on U* J U = J
COISOMETRY_TOL = 1e-10    # relative defect accepted on V V* = I
ALIGN_RANK_RTOL = 1e-8    # singular-value cutoff for the span test
ALIGN_RESIDUAL_TOL = 1e-7
ALIGN_STRUCTURE_TOL = 1e-6  # J-isometry and intertwining defects


@dataclass(frozen=True)
class SignatureGram:
    """Diagonal signature matrix with entries +-1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.signs or any(s not in (-1, 1) for s in self.signs):
            raise ShapeError("signature entries must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def kappa(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def as_qmatrix(self) -> QMatrix:
        d = np.diag(np.array(self.signs, dtype=float))
        return QMatrix(d, np.zeros_like(d))


@dataclass(frozen=True)
class PontryaginRealization:
    """Triple (J, U, C) producing moments r(n) = C* J U^n C."""

    J: SignatureGram
    U: QMatrix
    C: QMatrix

    def __post_init__(self):
        d = self.J.dim
        if self.U.shape != (d, d):
            raise ShapeError(f"U must be {d}x{d}, got {self.U.shape}")
        if self.C.rows != d or self.C.cols < 1:
            raise ShapeError(f"C must have {d} rows, got {self.C.shape}")

    def j_unitarity_defect(self) -> float:
        jq = self.J.as_qmatrix()
        return (adjoint(self.U) @ jq @ self.U - jq).max_entry()


def _require_j_unitary(R: PontryaginRealization) -> None:
    defect = R.j_unitarity_defect()
    if defect > J_UNITARY_TOL * scale_of(R.U):
        raise NotJUnitary(f"U* J U - J has defect {defect:.3e}")


def moment(R: PontryaginRealization, n: int) -> QMatrix:
    """r(n) = C* J U^n C, using U^(-1) = J U* J for negative n."""
    _require_j_unitary(R)
    jq = R.J.as_qmatrix()
    base = R.U if n >= 0 else jq @ adjoint(R.U) @ jq
    un = QMatrix.identity(R.J.dim)
    for _ in range(abs(n)):
        un = un @ base
    return adjoint(R.C) @ jq @ un @ R.C


def moment_sequence(R: PontryaginRealization, N_max: int) -> HermitianSequence:
    """The sequence r(0), ..., r(N_max) as a HermitianSequence."""
    _require_j_unitary(R)
    jq = R.J.as_qmatrix()
    cs = adjoint(R.C) @ jq
    vals = []
    cur = R.C
    for _ in range(N_max + 1):
        vals.append(cs @ cur)
        cur = R.U @ cur
    return HermitianSequence(vals)


def verify_negative_squares_bound(R: PontryaginRealization,
                                  N_max: int) -> tuple[int, bool]:
    """Negative squares of the realized sequence, checked against kappa.

    Returns (kappa_seq, kappa_seq <= R.J.kappa).  The inequality holds for
    every J-unitary realization; a False verdict signals numerics gone
    wrong rather than a counterexample.
    """
    seq = moment_sequence(R, N_max)
    kappa_seq, _, _ = negative_squares(seq, N_max)
    return kappa_seq, kappa_seq <= R.J.kappa


def dilate_coisometry(V: QMatrix) -> QMatrix:
    """Unitary block dilation [[V*, I - V* V], [0, V]] of a coisometry.

    Only square V is accepted (ShapeError otherwise); in finite dimension a
    square coisometry is already unitary, so the off-diagonal corner is
    numerical dust, but the block form is kept as stated.  NotCoisometry if
    V V* deviates from the identity beyond 1e-10 * scale.
    """
    if V.rows != V.cols:
        raise ShapeError(f"dilation requires square V, got {V.shape}")
    d = V.rows
    ident = QMatrix.identity(d)
    defect = (V @ adjoint(V) - ident).max_entry()
    if defect > COISOMETRY_TOL * scale_of(V):
        raise NotCoisometry(f"V V* - I has defect {defect:.3e}")
    vs = adjoint(V)
    corner = ident - vs @ V
    p1 = np.block([[vs.p1, corner.p1],
                   [np.zeros((d, d)), V.p1]])
    p2 = np.block([[vs.p2, corner.p2],
                   [np.zeros((d, d)), V.p2]])
    return QMatrix(p1, p2)


def random_j_unitary(J: SignatureGram, seed) -> QMatrix:
    """Seeded random J-unitary via the Cayley transform of a J-skew matrix.

    S is the J-skew projection (M - J M* J)/2 of a Gaussian matrix, and
    U = (I - S)^(-1) (I + S).  Draws are rejected while I - S is close to
    singular; after 100 attempts DegenerateSeed is raised.
    """
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    d = J.dim
    jq = J.as_qmatrix()
    ident = QMatrix.identity(d)
    for _ in range(100):
        m = random_qmatrix(rng, d, d, sigma=0.5)
        s = (m - jq @ adjoint(m) @ jq).times_real(0.5)
        a = chi_embed(ident - s)
        sv = np.linalg.svd(a, compute_uv=False)
        if float(sv[-1]) <= 1e-8 * float(sv[0]):
            continue
        u_chi = np.linalg.solve(a, chi_embed(ident + s))
        return chi_inverse(u_chi)
    raise DegenerateSeed("I - S remained singular across 100 draws")


def _stacked_orbit(R: PontryaginRealization, n_range: Sequence[int]) -> QMatrix:
    jq = R.J.as_qmatrix()
    inv = jq @ adjoint(R.U) @ jq
    cols = []
    for n in n_range:
        base = R.U if n >= 0 else inv
        cur = R.C
        for _ in range(abs(n)):
            cur = base @ cur
        cols.append(cur)
    return qhstack(cols)


def align_realizations(R1: PontryaginRealization, R2: PontryaginRealization,
                       n_range: Iterable[int]) -> QMatrix:
    """J-unitary S with S U1^n C1 = U2^n C2 across n_range.

    The system is solved by least squares in the complex embedding and
    mapped back.  SpanDeficient when either orbit stack fails to reach
    full numerical rank (cutoff 1e-8 relative); NoUnitaryAlignment when
    the fit residual exceeds 1e-7 * scale or the solution is not a
    J-isometry / intertwiner within 1e-6.
    """
    ns = sorted(set(int(n) for n in n_range))
    if not ns:
        raise ValueError("n_range must be nonempty")
    if R1.C.cols != R2.C.cols:
        raise ShapeError("realizations must share output dimension")
    _require_j_unitary(R1)
    _require_j_unitary(R2)
    x = _stacked_orbit(R1, ns)
    y = _stacked_orbit(R2, ns)
    cx = chi_embed(x)
    cy = chi_embed(y)
    for label, mat, d in (("first", cx, R1.J.dim), ("second", cy, R2.J.dim)):
        sv = np.linalg.svd(mat, compute_uv=False)
        rank = int(np.sum(sv > ALIGN_RANK_RTOL * float(sv[0])))
        if rank < 2 * d:
            raise SpanDeficient(
                f"{label} orbit stack has rank {rank} < {2 * d}")
    t, *_ = np.linalg.lstsq(cx.T, cy.T, rcond=None)
    s_mat = chi_inverse(t.T)

    scale = scale_of(x, y)
    residual = (s_mat @ x - y).max_entry()
    if residual > ALIGN_RESIDUAL_TOL * scale:
        raise NoUnitaryAlignment(
            f"orbit residual {residual:.3e} exceeds tolerance")
    j1 = R1.J.as_qmatrix()
    j2 = R2.J.as_qmatrix()
    gram = adjoint(s_mat) @ j2 @ s_mat - j1
    gram_defect = gram.max_entry()
    if gram_defect > ALIGN_STRUCTURE_TOL * scale_of(s_mat):
        raise NoUnitaryAlignment(
            f"S* J2 S - J1 has defect {gram_defect:.3e}")
    twine = (s_mat @ R1.U - R2.U @ s_mat).max_entry()
    if twine > ALIGN_STRUCTURE_TOL * scale_of(R1.U, R2.U):
        raise NoUnitaryAlignment(
            f"intertwining defect {twine:.3e} exceeds tolerance")
    return s_mat
