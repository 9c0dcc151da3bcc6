"""Finite quaternionic trigonometric moment sequences and their Toeplitz forms.

A sequence stores r(0), ..., r(N) with s x s quaternionic blocks; negative
indices are defined by r(-n) = r(n)*.  The block Toeplitz matrix T_N has
(j, l) block r(l - j), so its first block row reads r(0), r(1), ..., r(N).
Positivity of T_N for every N is the moment-problem condition; the number
of negative squares is the maximal count of negative eigenvalues over all
T_N.

`caratheodory_extend` grows a positive sequence one step at a time through
the three-block positive completion: at support N the partition of T_{N+1}
into blocks of widths (s, N s, s) exposes corners A = r(0),
B = [r(1) ... r(N)], C = T_{N-1}, D = [r(N); ...; r(1)], E = r(0), and the
completion corner becomes the next moment r(N+1).  At N = 0 the middle
band is empty and the step returns the zero matrix.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (BlockNotPSD, CompletionFailure, NotPD, NotPSD,
                     ShapeError, SupportExceeded)
from .qlinalg import Inertia, hermitian_eigen, psd_complete_3x3
from .quatcore import QMatrix, adjoint, qhstack, qvstack, scale_of

__all__ = [
    "HermitianSequence",
    "build_toeplitz",
    "is_positive_definite",
    "negative_squares",
    "caratheodory_extend",
]

R0_HERMITIAN_TOL = 1e-10   # relative defect accepted for r(0) at construction
PD_TOL = 1e-9              # is_positive_definite verdict threshold, relative
EXTEND_TOL = 1e-7          # intermediate PSD floor during extension, relative


class HermitianSequence:
    """Finitely supported map n -> r(n) with Hermitian-symmetric extension.

    Only n >= 0 is stored; ``value(-n)`` returns adjoint(r(n)).  r(0) must
    be Hermitian within 1e-10 * scale and is symmetrized exactly on
    construction, so Toeplitz matrices built from the sequence satisfy
    adjoint(T) = T bit for bit.
    """

    __slots__ = ("s", "_values")

    def __init__(self, values: Sequence[QMatrix]):
        vals = list(values)
        if not vals:
            raise ShapeError("sequence needs at least r(0)")
        s = vals[0].rows
        for n, v in enumerate(vals):
            if v.shape != (s, s):
                raise ShapeError(f"block {n} has shape {v.shape}, expected ({s},{s})")
        r0 = vals[0]
        defect = (r0 - adjoint(r0)).max_entry()
        if defect > R0_HERMITIAN_TOL * scale_of(r0):
            raise ValueError(f"r(0) symmetry defect {defect:.3e} too large")
        # exact in IEEE arithmetic: adjoint of the symmetrized block equals
        # the block itself bitwise
        vals[0] = (r0 + adjoint(r0)).times_real(0.5)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "_values", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("HermitianSequence is immutable")

    @property
    def N(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> tuple[QMatrix, ...]:
        return self._values

    def value(self, n: int) -> QMatrix:
        if abs(n) > self.N:
            raise SupportExceeded(f"|{n}| exceeds support radius {self.N}")
        return self._values[n] if n >= 0 else adjoint(self._values[-n])

    def __repr__(self) -> str:
        return f"HermitianSequence(s={self.s}, N={self.N})"


def _toeplitz_planes(vals: Sequence[QMatrix], N: int) -> QMatrix:
    s = vals[0].rows
    dim = (N + 1) * s
    p1 = np.empty((dim, dim), dtype=np.complex128)
    p2 = np.empty((dim, dim), dtype=np.complex128)
    adj = [adjoint(v) for v in vals]
    for j in range(N + 1):
        for l in range(N + 1):
            blk = vals[l - j] if l >= j else adj[j - l]
            p1[j * s:(j + 1) * s, l * s:(l + 1) * s] = blk.p1
            p2[j * s:(j + 1) * s, l * s:(l + 1) * s] = blk.p2
    return QMatrix(p1, p2)


def build_toeplitz(seq: HermitianSequence, N: int) -> QMatrix:
    """Block Toeplitz matrix T_N with (j, l) block r(l - j)."""
    if N < 0:
        raise ShapeError("Toeplitz order must be nonnegative")
    if N > seq.N:
        raise SupportExceeded(f"T_{N} needs r({N}) but support radius is {seq.N}")
    return _toeplitz_planes(seq.values, N)


def is_positive_definite(seq: HermitianSequence, N: int) -> tuple[bool, float]:
    """PSD verdict for T_N: (min_eig >= -1e-9 * scale, min_eig)."""
    T = build_toeplitz(seq, N)
    inertia = hermitian_eigen(T)
    min_eig = inertia.eigenvalues[0]
    return min_eig >= -PD_TOL * scale_of(T), min_eig


def negative_squares(seq: HermitianSequence,
                     N_max: int) -> tuple[int, list[int], bool]:
    """Negative-square count over T_0 ... T_{N_max}.

    Returns (kappa, profile, stabilized) where profile[N] is the number of
    negative eigenvalues of T_N, kappa is the running maximum, and
    stabilized reports whether the last three profile entries agree (a
    heuristic certificate that the count has settled; always False when
    fewer than three orders were inspected).  The profile is non-decreasing
    by eigenvalue interlacing.
    """
    profile = [hermitian_eigen(build_toeplitz(seq, N)).neg
               for N in range(N_max + 1)]
    kappa = max(profile)
    stabilized = len(profile) >= 3 and profile[-1] == profile[-2] == profile[-3]
    return kappa, profile, stabilized


def caratheodory_extend(seq: HermitianSequence, steps: int) -> HermitianSequence:
    """Extend a positive sequence by ``steps`` moments, preserving positivity.

    Each step completes the three-block corner described in the module
    docstring and appends the completion as the next moment; input values
    are carried over unchanged (same objects).  Raises NotPD when the input
    fails is_positive_definite at its own support, CompletionFailure when a
    hypothesis block or an extended Toeplitz matrix drops below
    -1e-7 * scale.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    ok, min_eig = is_positive_definite(seq, seq.N)
    if not ok:
        raise NotPD(f"input sequence has T_{seq.N} eigenvalue {min_eig:.6e}")
    vals = list(seq.values)
    s = seq.s
    for _ in range(steps):
        n_cur = len(vals) - 1
        A = vals[0]
        E = vals[0]
        if n_cur == 0:
            B = QMatrix(np.zeros((s, 0)), np.zeros((s, 0)))
            C = QMatrix(np.zeros((0, 0)), np.zeros((0, 0)))
            D = QMatrix(np.zeros((0, s)), np.zeros((0, s)))
        else:
            B = qhstack(vals[1:n_cur + 1])
            C = _toeplitz_planes(vals, n_cur - 1)
            D = qvstack(vals[n_cur:0:-1])
        try:
            x = psd_complete_3x3(A, B, C, D, E)
        except (BlockNotPSD, NotPSD) as exc:
            raise CompletionFailure(
                f"completion hypothesis failed at support {n_cur}: {exc}") from exc
        vals.append(x)
        T = _toeplitz_planes(vals, n_cur + 1)
        min_new = hermitian_eigen(T).eigenvalues[0]
        if min_new < -EXTEND_TOL * scale_of(T):
            raise CompletionFailure(
                f"extended T_{n_cur + 1} has eigenvalue {min_new:.6e}")
    return HermitianSequence(vals)
