"""Slice function machinery: power series, kernels, and boundary measures.

Power series sum with coefficients on the right, f(p) = sum p^n a_n, so a
series restricted to one complex plane C_I is an ordinary holomorphic
function there.  Values on other slices come from the two-point formula ::

    f(x + I y) = (f(x + J y) + f(x - J y)) / 2
                 + I (J (f(x - J y) - f(x + J y))) / 2,

valid for any unit imaginary J.  The boundary kernel on a slice is
Lambda_I(z, t) = (e^(I t) + z) / (e^(I t) - z), whose real part is the
Poisson quotient (1 - |z|^2) / |e^(I t) - z|^2; the global kernel on the
whole ball has the closed form ::

    K(q, e^(I t)) = (1 + q^2 - 2 q cos t)^(-1) (1 - 2 q I sin t - q^2),

which this module cross-checks against the two-point formula on every
evaluation.  The sign of the middle term matches the expansion
1 + 2 sum q^n e^(-I n t): multiply (e^(I t) + z) / (e^(I t) - z) through
by (e^(-I t) - z) to see it.

Carathedory-style functions built from a Hermitian sequence,
phi(p) = r(0) + 2 sum_{n>=1} p^n r(n), feed the reproducing kernel
K_phi(p, q) = sum_n p^n ((phi(p) + phi(q)*) / 2) conj(q)^n, which satisfies
K - p K conj(q) = (phi(p) + phi(q)*) / 2 up to the truncation tail.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import FrameError, OutOfDomain, ShapeError
from .moments import HermitianSequence
from .qlinalg import Inertia, hermitian_eigen
from .quatcore import (QMatrix, Quaternion, adjoint, embed_in_plane,
                       is_unit_imaginary)

__all__ = [
    "SeriesValue",
    "SlicePowerSeries",
    "eval_series",
    "representation_formula",
    "herglotz_kernel_slice",
    "herglotz_kernel_global",
    "SliceAtom",
    "SliceMeasure",
    "synthesize_slice",
    "coefficient_from_measure",
    "CaratheodoryFunction",
    "phi_from_sequence",
    "caratheodory_kernel",
    "kernel_negative_squares",
]

TAIL_CERT = 1e-10          # certified tail size required by phi evaluation
GLOBAL_AGREE_TOL = 1e-10   # dual-path agreement enforced by the global kernel


class SeriesValue(NamedTuple):
    """Truncated evaluation together with its tail estimate."""

    value: QMatrix
    tail_bound: float


@dataclass(frozen=True)
class SlicePowerSeries:
    """Truncated left power series sum p^n a_n with s x s coefficients.

    ``radius`` bounds the region where the geometric tail estimate is
    meaningful; evaluation outside it raises OutOfDomain.  Use
    ``math.inf`` for exact polynomials.
    """

    coeffs: tuple[QMatrix, ...]
    radius: float = 1.0

    def __post_init__(self):
        if not self.coeffs:
            raise ShapeError("series needs at least one coefficient")
        s = self.coeffs[0].rows
        for a in self.coeffs:
            if a.shape != (s, s):
                raise ShapeError("coefficients must share a square shape")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def s(self) -> int:
        return self.coeffs[0].rows

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def coeff_bound(self) -> float:
        return max(a.norm_fro() for a in self.coeffs)


def eval_series(f: SlicePowerSeries, p: Quaternion) -> SeriesValue:
    """Horner evaluation of sum p^n a_n with powers acting on the left.

    The tail estimate assumes the dropped coefficients obey the same bound
    as the stored ones and sums the geometric tail at ratio |p| / radius.
    """
    rho = abs(p)
    if rho >= f.radius:
        raise OutOfDomain(f"|p| = {rho:.6g} is not inside radius {f.radius}")
    acc = f.coeffs[-1]
    for a in reversed(f.coeffs[:-1]):
        acc = acc.scale_left(p) + a
    if math.isinf(f.radius):
        tail = 0.0
    else:
        ratio = rho / f.radius
        tail = f.coeff_bound * ratio ** (f.degree + 1) / (1.0 - ratio)
    return SeriesValue(acc, tail)


def representation_formula(f_plus: QMatrix, f_minus: QMatrix,
                           i_unit: Quaternion, j_unit: Quaternion) -> QMatrix:
    """Two-point slice extension: values at x +- J y produce the value at x + I y.

    f_plus is the value at x + J y, f_minus the value at x - J y.
    """
    if f_plus.shape != f_minus.shape:
        raise ShapeError("slice samples must share shape")
    half_sum = (f_plus + f_minus).times_real(0.5)
    correction = (f_minus - f_plus).scale_left(j_unit).scale_left(i_unit)
    return half_sum + correction.times_real(0.5)


def herglotz_kernel_slice(z: complex, t: float) -> complex:
    """Boundary kernel (e^(i t) + z) / (e^(i t) - z) in plane coordinates.

    Works in the coordinates of whatever slice plane z lives in; the
    arithmetic is plane independent.  Requires |z| < 1.
    """
    if abs(z) >= 1.0:
        raise OutOfDomain(f"|z| = {abs(z):.6g} must be < 1")
    e = cmath.exp(1j * t)
    return (e + z) / (e - z)


def herglotz_kernel_global(q: Quaternion, t: float,
                           i_unit: Quaternion) -> Quaternion:
    """Global Herglotz kernel K(q, e^(I t)) on the open unit ball.

    Evaluates the closed form
    (1 + q^2 - 2 q cos t)^(-1) (1 - 2 q I sin t - q^2) and asserts that it
    agrees with the two-point-formula route within 1e-10.
    """
    if abs(q) >= 1.0:
        raise OutOfDomain(f"|q| = {abs(q):.6g} must be < 1")
    if not is_unit_imaginary(i_unit):
        raise FrameError("kernel direction must be a unit imaginary")
    one = Quaternion(1.0)
    q2 = q * q
    denom = one + q2 - q.times(2.0 * math.cos(t))
    numer = one - (q * i_unit).times(2.0 * math.sin(t)) - q2
    value = denom.inverse() * numer

    # independent route: restrict to the plane of q and extend
    y = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    zeta = complex(q.w, y)
    lam_p = embed_in_plane(herglotz_kernel_slice(zeta, t), i_unit)
    lam_m = embed_in_plane(herglotz_kernel_slice(zeta.conjugate(), t), i_unit)
    if y == 0.0:
        check = (lam_p + lam_m).times(0.5)
    else:
        iq = Quaternion(0.0, q.x / y, q.y / y, q.z / y)
        check = (lam_p + lam_m).times(0.5) \
            + (iq * (i_unit * (lam_m - lam_p))).times(0.5)
    agree = (value - check).norm()
    assert agree <= GLOBAL_AGREE_TOL * max(1.0, value.norm()), \
        f"kernel evaluation paths disagree by {agree:.3e}"
    return value


@dataclass(frozen=True)
class SliceAtom:
    """Boundary atom with nonnegative diagonal weight mu1 and j-part mu2."""

    t: float
    mu1: float
    mu2: float


@dataclass(frozen=True)
class SliceMeasure:
    """Scalar boundary measure data for a slice Herglotz function.

    Atoms live on [0, 2 pi) with weights mu1 + mu2 J, mu1 >= 0; the
    imaginary constants feed the value I (imag0_f + imag0_g J) at the
    origin.  I and J must be orthogonal unit imaginaries.
    """

    i_unit: Quaternion
    j_unit: Quaternion
    atoms: tuple[SliceAtom, ...]
    imag0_f: float = 0.0
    imag0_g: float = 0.0

    def __post_init__(self):
        if not is_unit_imaginary(self.i_unit) or not is_unit_imaginary(self.j_unit):
            raise FrameError("slice measure needs unit imaginary I and J")
        if abs(float(self.i_unit.imag_vec() @ self.j_unit.imag_vec())) > 1e-9:
            raise FrameError("I and J must be orthogonal")
        cooked = []
        for atom in self.atoms:
            if not isinstance(atom, SliceAtom):
                atom = SliceAtom(*atom)
            if atom.mu1 < 0.0:
                raise ValueError(f"mu1 must be nonnegative, got {atom.mu1}")
            cooked.append(SliceAtom(atom.t % (2.0 * math.pi),
                                    float(atom.mu1), float(atom.mu2)))
        object.__setattr__(self, "atoms", tuple(cooked))

    def mass(self) -> float:
        return sum(math.hypot(a.mu1, a.mu2) for a in self.atoms)


def synthesize_slice(m: SliceMeasure, z: complex) -> Quaternion:
    """Value of the slice Herglotz function at z = x + I y, |z| < 1.

    f(z) = I (imag0_f + imag0_g J) + sum Lambda_I(z, t) (mu1 + mu2 J).
    With mu1 >= 0 and zero constants the real part is a nonnegative
    Poisson sum.
    """
    if abs(z) >= 1.0:
        raise OutOfDomain(f"|z| = {abs(z):.6g} must be < 1")
    iu, ju = m.i_unit, m.j_unit
    out = iu.times(m.imag0_f) + (iu * ju).times(m.imag0_g)
    for atom in m.atoms:
        lam = embed_in_plane(herglotz_kernel_slice(z, atom.t), iu)
        weight = Quaternion(atom.mu1) + ju.times(atom.mu2)
        out = out + lam * weight
    return out


def coefficient_from_measure(m: SliceMeasure, n: int) -> Quaternion:
    """Power series coefficient a_n = 2 sum e^(-I n t) (mu1 + mu2 J), n >= 1.

    Each coefficient is bounded by twice the total mass.
    """
    if n < 1:
        raise ValueError("coefficient formula applies for n >= 1")
    iu, ju = m.i_unit, m.j_unit
    out = Quaternion()
    for atom in m.atoms:
        phase = embed_in_plane(cmath.exp(-1j * n * atom.t), iu)
        weight = Quaternion(atom.mu1) + ju.times(atom.mu2)
        out = out + phase * weight
    return out.times(2.0)


@dataclass(frozen=True)
class CaratheodoryFunction:
    """phi(p) = r(0) + 2 sum_{n>=1} p^n r(n) built from a Hermitian sequence.

    ``coeff_bound``, when given, certifies ||r(n)|| <= coeff_bound for the
    unstored indices n > N (for measure-derived sequences the total mass
    bound does); without it the sequence is treated as finitely supported
    and the evaluation is an exact polynomial once M >= N.
    """

    seq: HermitianSequence
    coeff_bound: float | None = None

    @cached_property
    def _norms(self) -> tuple[float, ...]:
        return tuple(v.norm_fro() for v in self.seq.values)

    def value(self, p: Quaternion, M: int) -> SeriesValue:
        return _phi_eval(self.seq, p, M, self.coeff_bound, self._norms)

    @property
    def s(self) -> int:
        return self.seq.s


def _phi_eval(seq: HermitianSequence, p: Quaternion, M: int,
              coeff_bound: float | None,
              norms: Sequence[float]) -> SeriesValue:
    if M < 0:
        raise ValueError("truncation order must be nonnegative")
    rho = abs(p)
    m_eff = min(M, seq.N)
    tail = 2.0 * sum(norms[n] * rho ** n for n in range(m_eff + 1, seq.N + 1))
    if coeff_bound is not None:
        if rho >= 1.0:
            raise OutOfDomain(f"|p| = {rho:.6g} must be < 1 for infinite tails")
        tail += 2.0 * coeff_bound * rho ** (seq.N + 1) / (1.0 - rho)
    if tail > TAIL_CERT:
        raise OutOfDomain(
            f"tail estimate {tail:.3e} exceeds certificate {TAIL_CERT:.0e}; "
            f"shrink |p| or raise the truncation order")
    acc = seq.values[m_eff].times_real(2.0) if m_eff > 0 else seq.values[0]
    for n in range(m_eff - 1, -1, -1):
        term = seq.values[n] if n == 0 else seq.values[n].times_real(2.0)
        acc = acc.scale_left(p) + term
    return SeriesValue(acc, tail)


def phi_from_sequence(seq: HermitianSequence, p: Quaternion, M: int,
                      coeff_bound: float | None = None) -> SeriesValue:
    """Evaluate phi(p) = r(0) + 2 sum_{n=1}^{min(M, N)} p^n r(n).

    Raises OutOfDomain unless the truncation tail is certified below
    1e-10 (see CaratheodoryFunction for the certificate logic).
    """
    norms = tuple(v.norm_fro() for v in seq.values)
    return _phi_eval(seq, p, M, coeff_bound, norms)


def caratheodory_kernel(phi: CaratheodoryFunction, p: Quaternion,
                        q: Quaternion, M: int) -> QMatrix:
    """Truncated reproducing kernel sum_{n=0}^{M} p^n W conj(q)^n.

    W = (phi(p) + phi(q)*) / 2.  The result satisfies
    K - p K conj(q) = W up to ||W|| (|p| |q|)^(M+1) plus roundoff.
    """
    if abs(p) >= 1.0 or abs(q) >= 1.0:
        raise OutOfDomain("kernel arguments must lie in the open unit ball")
    phi_p = phi.value(p, M).value
    phi_q = phi.value(q, M).value
    w = (phi_p + adjoint(phi_q)).times_real(0.5)
    qc = q.conj()
    acc = w
    term = w
    for _ in range(M):
        term = term.scale_left(p).scale_right(qc)
        acc = acc + term
    return acc


def kernel_negative_squares(phi: CaratheodoryFunction,
                            points: Sequence[Quaternion], M: int) -> Inertia:
    """Inertia of the block Gram matrix [K_phi(p_i, p_j)]_{i,j}.

    Points must be pairwise distinct.  The Gram matrix is Hermitian up to
    roundoff and is symmetrized before the eigenvalue count.
    """
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if (pts[i] - pts[j]).norm() <= 1e-12:
                raise ValueError("kernel sample points must be distinct")
    s = phi.s
    n = len(pts)
    p1 = np.empty((n * s, n * s), dtype=np.complex128)
    p2 = np.empty((n * s, n * s), dtype=np.complex128)
    for i, pi in enumerate(pts):
        for j, pj in enumerate(pts):
            blk = caratheodory_kernel(phi, pi, pj, M)
            p1[i * s:(i + 1) * s, j * s:(j + 1) * s] = blk.p1
            p2[i * s:(i + 1) * s, j * s:(j + 1) * s] = blk.p2
    gram = QMatrix(p1, p2)
    gram = (gram + adjoint(gram)).times_real(0.5)
    return hermitian_eigen(gram)
