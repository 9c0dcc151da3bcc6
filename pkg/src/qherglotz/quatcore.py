"""Quaternion arithmetic, quaternionic matrices, and the complex adjoint embedding.

A quaternion ``w + x i + y j + z k`` is handled throughout as the complex
pair ``(w + x i, y + z i)``: every quaternion is ``c1 + c2 j`` with ``c1``
and ``c2`` in the plane spanned by ``1`` and ``i``.  A quaternionic matrix
is likewise a pair of complex arrays ``(p1, p2)`` with ``P = P1 + P2 j``,
and the doubling embedding ::

    chi(P) = [[ P1,        P2       ],
              [-conj(P2),  conj(P1) ]]

is a *-isomorphism onto the complex matrices of twice the size carrying
that block symmetry.  Every spectral computation in the package goes
through ``chi``.

Complex parts are always taken with respect to the unit ``i``.  Other
slice planes are reached through the frame utilities
(:func:`frame_complete`, :func:`split_coefficient`) and through
:mod:`qherglotz.slicefn`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import FrameError, ShapeError, SymmetryViolation

__all__ = [
    "Quaternion",
    "QMatrix",
    "ONE",
    "ZERO",
    "I",
    "J",
    "K",
    "qmul",
    "imaginary_unit",
    "is_unit_imaginary",
    "frame_complete",
    "split_coefficient",
    "embed_in_plane",
    "chi_embed",
    "chi_inverse",
    "adjoint",
    "qhstack",
    "qvstack",
    "scale_of",
    "random_qmatrix",
]

# Image-symmetry tolerance for chi_inverse, relative to scale_of(M).
CHI_SYMMETRY_TOL = 1e-10

# Orthonormality tolerance for imaginary-unit frames.
FRAME_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Scalar quaternion ``w + x i + y j + z k`` with float components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b = self, other
            return Quaternion(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        if isinstance(other, (int, float)):
            return self.times(float(other))
        return NotImplemented

    def __rmul__(self, other):
        # Reals are central, so this is safe; quaternion * quaternion goes
        # through __mul__ on the left operand.
        if isinstance(other, (int, float)):
            return self.times(float(other))
        return NotImplemented

    def times(self, f: float) -> "Quaternion":
        return Quaternion(self.w * f, self.x * f, self.y * f, self.z * f)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ZeroDivisionError("inverse of zero quaternion")
        return self.conj().times(1.0 / n2)

    @property
    def real(self) -> float:
        return self.w

    def imag_vec(self) -> np.ndarray:
        """Imaginary part as a length-3 float vector (i, j, k components)."""
        return np.array([self.x, self.y, self.z])

    def to_complex_pair(self) -> tuple[complex, complex]:
        """Components (c1, c2) of the decomposition q = c1 + c2 j."""
        return complex(self.w, self.x), complex(self.y, self.z)

    @classmethod
    def from_complex_pair(cls, c1: complex, c2: complex) -> "Quaternion":
        return cls(c1.real, c1.imag, c2.real, c2.imag)

    def approx_eq(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product of two quaternions (i j = k, j i = -k)."""
    return a * b


def imaginary_unit(x: float, y: float, z: float) -> Quaternion:
    """Normalize (x, y, z) into a unit imaginary quaternion."""
    n = math.sqrt(x * x + y * y + z * z)
    if n == 0.0:
        raise FrameError("zero vector cannot define an imaginary unit")
    return Quaternion(0.0, x / n, y / n, z / n)


def is_unit_imaginary(q: Quaternion, tol: float = FRAME_TOL) -> bool:
    return abs(q.w) <= tol and abs(q.norm() - 1.0) <= tol


def frame_complete(i_unit: Quaternion) -> tuple[Quaternion, Quaternion]:
    """Complete a unit imaginary I to an orthonormal frame (J, K = I J).

    Deterministic choice: take the canonical basis direction (j, then k,
    then i) least aligned with I, remove its component along I, and
    normalize.  frame_complete(i) gives (j, k); frame_complete(j) gives
    (k, i).
    """
    v = i_unit.imag_vec()
    n = np.linalg.norm(v)
    if n == 0.0:
        raise FrameError("frame_complete needs a nonzero imaginary part")
    v = v / n
    # candidate order fixed: j, k, i
    candidates = (np.array([0.0, 1.0, 0.0]),
                  np.array([0.0, 0.0, 1.0]),
                  np.array([1.0, 0.0, 0.0]))
    dots = [abs(float(v @ b)) for b in candidates]
    b = candidates[int(np.argmin(dots))]
    w = b - float(v @ b) * v
    w = w / np.linalg.norm(w)
    j_unit = Quaternion(0.0, float(w[0]), float(w[1]), float(w[2]))
    i_norm = Quaternion(0.0, float(v[0]), float(v[1]), float(v[2]))
    return j_unit, i_norm * j_unit


def split_coefficient(a: Quaternion, i_unit: Quaternion,
                      j_unit: Quaternion) -> tuple[complex, complex]:
    """Split a = alpha + beta * J with alpha, beta in the plane of (1, I).

    Returns (alpha, beta) as python complex numbers holding coordinates
    with respect to the orthonormal basis {1, I} of that plane.  Requires
    I, J to be orthogonal unit imaginaries (FrameError otherwise).
    """
    if not is_unit_imaginary(i_unit) or not is_unit_imaginary(j_unit):
        raise FrameError("split_coefficient needs unit imaginary I and J")
    if abs(float(i_unit.imag_vec() @ j_unit.imag_vec())) > FRAME_TOL:
        raise FrameError("I and J must be orthogonal")
    k_unit = i_unit * j_unit
    im = a.imag_vec()
    alpha = complex(a.w, float(im @ i_unit.imag_vec()))
    beta = complex(float(im @ j_unit.imag_vec()), float(im @ k_unit.imag_vec()))
    return alpha, beta


def embed_in_plane(zeta: complex, i_unit: Quaternion) -> Quaternion:
    """Map plane coordinates x + i y to the quaternion x + I y."""
    return Quaternion(zeta.real,
                      i_unit.x * zeta.imag,
                      i_unit.y * zeta.imag,
                      i_unit.z * zeta.imag)


class QMatrix:
    """Matrix over the quaternions, stored as the complex pair (p1, p2).

    Instances are immutable: the backing arrays are copied on construction
    and marked read-only.  Entry (r, c) is the quaternion
    ``p1[r, c] + p2[r, c] * j``.
    """

    __slots__ = ("p1", "p2")

    def __init__(self, p1, p2):
        a1 = np.array(p1, dtype=np.complex128)
        a2 = np.array(p2, dtype=np.complex128)
        if a1.ndim != 2 or a1.shape != a2.shape:
            raise ShapeError(f"component shapes differ: {a1.shape} vs {a2.shape}")
        a1.setflags(write=False)
        a2.setflags(write=False)
        object.__setattr__(self, "p1", a1)
        object.__setattr__(self, "p2", a2)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(np.zeros((rows, cols), dtype=np.complex128),
                   np.zeros((rows, cols), dtype=np.complex128))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(np.eye(n, dtype=np.complex128),
                   np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def from_scalar(cls, q: Quaternion) -> "QMatrix":
        c1, c2 = q.to_complex_pair()
        return cls([[c1]], [[c2]])

    @classmethod
    def from_entries(cls, grid: Sequence[Sequence[Quaternion]]) -> "QMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        p1 = np.zeros((rows, cols), dtype=np.complex128)
        p2 = np.zeros((rows, cols), dtype=np.complex128)
        for r, row in enumerate(grid):
            if len(row) != cols:
                raise ShapeError("ragged quaternion grid")
            for c, q in enumerate(row):
                p1[r, c], p2[r, c] = q.to_complex_pair()
        return cls(p1, p2)

    @classmethod
    def from_complex(cls, arr) -> "QMatrix":
        a = np.asarray(arr, dtype=np.complex128)
        return cls(a, np.zeros_like(a))

    @classmethod
    def from_real(cls, arr) -> "QMatrix":
        return cls.from_complex(np.asarray(arr, dtype=float))

    @classmethod
    def diag(cls, entries: Sequence[Quaternion]) -> "QMatrix":
        n = len(entries)
        p1 = np.zeros((n, n), dtype=np.complex128)
        p2 = np.zeros((n, n), dtype=np.complex128)
        for idx, q in enumerate(entries):
            p1[idx, idx], p2[idx, idx] = q.to_complex_pair()
        return cls(p1, p2)

    # -- structure ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.p1.shape[0]

    @property
    def cols(self) -> int:
        return self.p1.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.p1.shape

    def entry(self, r: int, c: int) -> Quaternion:
        return Quaternion.from_complex_pair(complex(self.p1[r, c]),
                                            complex(self.p2[r, c]))

    def to_quaternion(self) -> Quaternion:
        if self.shape != (1, 1):
            raise ShapeError("to_quaternion needs a 1x1 matrix")
        return self.entry(0, 0)

    def entry_norms(self) -> np.ndarray:
        """Entrywise quaternion magnitudes as a real array."""
        return np.sqrt(np.abs(self.p1) ** 2 + np.abs(self.p2) ** 2)

    def norm_fro(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.p1) ** 2))
                         + float(np.sum(np.abs(self.p2) ** 2)))

    def max_entry(self) -> float:
        if self.p1.size == 0:
            return 0.0
        return float(self.entry_norms().max())

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.p1 + other.p1, self.p2 + other.p2)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.p1 - other.p1, self.p2 - other.p2)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.p1, -self.p2)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"matmul shapes {self.shape} x {other.shape}")
        # (A1 + A2 j)(B1 + B2 j); j z = conj(z) j moves all j to the right
        p1 = self.p1 @ other.p1 - self.p2 @ other.p2.conj()
        p2 = self.p1 @ other.p2 + self.p2 @ other.p1.conj()
        return QMatrix(p1, p2)

    def adjoint(self) -> "QMatrix":
        # entrywise conjugate of P1 + P2 j is conj(P1) - P2 j, then transpose
        return QMatrix(self.p1.conj().T, -self.p2.T)

    def scale_left(self, q: Quaternion) -> "QMatrix":
        """q * P with the scalar acting from the left."""
        a, b = q.to_complex_pair()
        return QMatrix(a * self.p1 - b * self.p2.conj(),
                       a * self.p2 + b * self.p1.conj())

    def scale_right(self, q: Quaternion) -> "QMatrix":
        """P * q with the scalar acting from the right."""
        a, b = q.to_complex_pair()
        return QMatrix(self.p1 * a - self.p2 * np.conj(b),
                       self.p1 * b + self.p2 * np.conj(a))

    def times_real(self, f: float) -> "QMatrix":
        return QMatrix(self.p1 * f, self.p2 * f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.shape == other.shape
                and bool(np.array_equal(self.p1, other.p1))
                and bool(np.array_equal(self.p2, other.p2)))

    __hash__ = None

    def allclose(self, other: "QMatrix", tol: float = 1e-12) -> bool:
        if self.shape != other.shape:
            return False
        return (self - other).max_entry() <= tol

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"


def adjoint(P: QMatrix) -> QMatrix:
    """Conjugate transpose; chi_embed(adjoint(P)) = chi_embed(P)^*."""
    return P.adjoint()


def chi_embed(P: QMatrix) -> np.ndarray:
    """Complex adjoint embedding of an s x t quaternionic matrix (2s x 2t)."""
    s, t = P.shape
    m = np.empty((2 * s, 2 * t), dtype=np.complex128)
    m[:s, :t] = P.p1
    m[:s, t:] = P.p2
    m[s:, :t] = -P.p2.conj()
    m[s:, t:] = P.p1.conj()
    return m


def chi_inverse(M: np.ndarray) -> QMatrix:
    """Inverse of chi_embed on matrices carrying the image block symmetry.

    Raises SymmetryViolation when the lower blocks deviate from
    (-conj(P2), conj(P1)) by more than 1e-10 relative to scale.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] % 2 or M.shape[1] % 2:
        raise ShapeError(f"chi_inverse needs even dimensions, got {M.shape}")
    s = M.shape[0] // 2
    t = M.shape[1] // 2
    a = M[:s, :t]
    b = M[:s, t:]
    c = M[s:, :t]
    d = M[s:, t:]
    scale = scale_of(M)
    defect = 0.0
    if a.size:
        defect = max(float(np.abs(d - a.conj()).max()),
                     float(np.abs(c + b.conj()).max()))
    if defect > CHI_SYMMETRY_TOL * scale:
        raise SymmetryViolation(
            f"block symmetry defect {defect:.3e} exceeds "
            f"{CHI_SYMMETRY_TOL:.0e} * scale ({scale:.3e})")
    # average the two copies of each part to shed numerical dust
    return QMatrix(0.5 * (a + d.conj()), 0.5 * (b - c.conj()))


def qhstack(mats: Iterable[QMatrix]) -> QMatrix:
    ms = list(mats)
    if not ms:
        raise ShapeError("qhstack of empty list")
    if any(m.rows != ms[0].rows for m in ms):
        raise ShapeError("qhstack needs a common row count")
    return QMatrix(np.hstack([m.p1 for m in ms]), np.hstack([m.p2 for m in ms]))


def qvstack(mats: Iterable[QMatrix]) -> QMatrix:
    ms = list(mats)
    if not ms:
        raise ShapeError("qvstack of empty list")
    if any(m.cols != ms[0].cols for m in ms):
        raise ShapeError("qvstack needs a common column count")
    return QMatrix(np.vstack([m.p1 for m in ms]), np.vstack([m.p2 for m in ms]))


def scale_of(*objects) -> float:
    """Relative-tolerance scale: max(1, largest entry magnitude)."""
    top = 1.0
    for obj in objects:
        if isinstance(obj, QMatrix):
            top = max(top, obj.max_entry())
        else:
            arr = np.asarray(obj)
            if arr.size:
                top = max(top, float(np.abs(arr).max()))
    return top


def random_qmatrix(rng: np.random.Generator, rows: int, cols: int,
                   sigma: float = 1.0) -> QMatrix:
    """Matrix with independent N(0, sigma^2) quaternion components."""
    comps = rng.normal(scale=sigma, size=(4, rows, cols))
    return QMatrix(comps[0] + 1j * comps[1], comps[2] + 1j * comps[3])
