"""Discrete q-positive measures on the circle and Herglotz-type synthesis.

A quaternionic measure nu = nu1 + nu2 j with finitely many atoms is
q-positive when the paired complex blocks ::

    mu(t) = [[ nu1(t),   nu2(t)          ],
             [ nu2(t)*,  conj(nu1(t'))   ]],        t' = (2 pi - t) mod 2 pi,

are positive semidefinite at every atom point and the off-diagonal parts
satisfy the antisymmetry nu2(t) = -nu2(t')^T.  Points without a listed
partner get an implicit zero-weight one, which forces nu2(t) = 0 there.
Note that mu itself still carries mass at such implicit partner points
through the conj(nu1) corner; support counting honours that.

Moments are synthesized in the complex embedding,
r(n) = sum_q e^(i n t_q) (nu1_q + nu2_q j), and come out Hermitian
(r(-n) = r(n)*) exactly when the measure is q-positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._jacobi import eigh_c
from .errors import DegenerateSeed, NotQPositive, ShapeError, SupportOverlap
from .qlinalg import op_norm
from .quatcore import QMatrix

__all__ = [
    "MeasureAtom",
    "DiscreteQPositiveMeasure",
    "MixedMeasurePair",
    "Violation",
    "validate_q_positive",
    "herglotz_synthesize",
    "synthesize_indefinite",
    "card_supp",
    "total_mass_bound",
    "random_q_positive_measure",
]

TWO_PI = 2.0 * math.pi
SPACING_TOL = 1e-9       # circular distance below which points coincide
PSD_TOL = 1e-10          # relative PSD / Hermitian tolerance for mu blocks
ANTISYM_TOL = 1e-10      # relative tolerance on nu2(t) + nu2(t')^T
RANK_RTOL = 1e-10        # rank cutoff inside card_supp


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _partner_point(t: float) -> float:
    return (TWO_PI - t) % TWO_PI


@dataclass(frozen=True)
class MeasureAtom:
    """Single atom: point t in [0, 2 pi) and complex s x s weights."""

    t: float
    nu1: np.ndarray
    nu2: np.ndarray

    def weight_norm(self) -> float:
        return float(np.abs(self.nu1).max(initial=0.0)
                     + np.abs(self.nu2).max(initial=0.0))


@dataclass(frozen=True)
class Violation:
    """One failed q-positivity check, with the offending point and defect."""

    kind: str
    t: float
    defect: float
    message: str


class DiscreteQPositiveMeasure:
    """Finite atomic measure nu1 + nu2 j, atoms sorted by angle.

    Construction normalizes points into [0, 2 pi), checks shapes and the
    pairwise spacing (circular distance > 1e-9), and freezes the weight
    arrays.  Whether the measure actually satisfies q-positivity is a
    separate question answered by :func:`validate_q_positive`.
    """

    __slots__ = ("s", "atoms", "__dict__")

    def __init__(self, s: int, atoms: Iterable):
        if s <= 0:
            raise ShapeError("block size must be positive")
        cooked = []
        for raw in atoms:
            if isinstance(raw, MeasureAtom):
                t, nu1, nu2 = raw.t, raw.nu1, raw.nu2
            else:
                t, nu1, nu2 = raw
            a1 = np.array(nu1, dtype=np.complex128)
            a2 = np.array(nu2, dtype=np.complex128)
            if a1.shape != (s, s) or a2.shape != (s, s):
                raise ShapeError(f"atom weights must be {s}x{s}")
            a1.setflags(write=False)
            a2.setflags(write=False)
            cooked.append(MeasureAtom(float(t) % TWO_PI, a1, a2))
        cooked.sort(key=lambda a: a.t)
        for i in range(len(cooked)):
            for j in range(i + 1, len(cooked)):
                if _circ_dist(cooked[i].t, cooked[j].t) <= SPACING_TOL:
                    raise ValueError(
                        f"atoms at {cooked[i].t} and {cooked[j].t} coincide")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "atoms", tuple(cooked))

    def _lookup(self, t: float) -> MeasureAtom | None:
        for atom in self.atoms:
            if _circ_dist(atom.t, t) <= SPACING_TOL:
                return atom
        return None

    def _mu_block(self, t: float) -> np.ndarray:
        """Assembled 2s x 2s block of the positive matrix measure at t."""
        zero = np.zeros((self.s, self.s), dtype=np.complex128)
        here = self._lookup(t)
        nu1 = here.nu1 if here is not None else zero
        nu2 = here.nu2 if here is not None else zero
        there = self._lookup(_partner_point(t))
        nu1p = there.nu1 if there is not None else zero
        return np.block([[nu1, nu2], [nu2.conj().T, nu1p.conj()]])

    def support_points(self) -> list[float]:
        """Atom points together with their (possibly implicit) partners."""
        pts = [a.t for a in self.atoms]
        for a in self.atoms:
            tp = _partner_point(a.t)
            if all(_circ_dist(tp, u) > SPACING_TOL for u in pts):
                pts.append(tp)
        return sorted(pts)

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        found = []
        for atom in self.atoms:
            partner = self._lookup(_partner_point(atom.t))
            other2 = partner.nu2 if partner is not None else np.zeros_like(atom.nu2)
            pair_scale = max(1.0, float(np.abs(atom.nu2).max(initial=0.0)),
                             float(np.abs(other2).max(initial=0.0)))
            anti = float(np.abs(atom.nu2 + other2.T).max(initial=0.0))
            if anti > ANTISYM_TOL * pair_scale:
                found.append(Violation(
                    "nu2-antisymmetry", atom.t, anti,
                    f"nu2({atom.t:.6g}) + nu2(partner)^T has defect {anti:.3e}"))
            block = self._mu_block(atom.t)
            scale = max(1.0, float(np.abs(block).max(initial=0.0)))
            herm = float(np.abs(block - block.conj().T).max(initial=0.0))
            if herm > PSD_TOL * scale:
                found.append(Violation(
                    "mu-block-not-hermitian", atom.t, herm,
                    f"mu block at {atom.t:.6g} has symmetry defect {herm:.3e}"))
                continue
            w, _ = eigh_c(block)
            if w.size and float(w[0]) < -PSD_TOL * scale:
                found.append(Violation(
                    "mu-block-not-psd", atom.t, float(w[0]),
                    f"mu block at {atom.t:.6g} has eigenvalue {w[0]:.6e}"))
        return tuple(found)

    def __repr__(self) -> str:
        return f"DiscreteQPositiveMeasure(s={self.s}, atoms={len(self.atoms)})"


@dataclass(frozen=True)
class MixedMeasurePair:
    """Difference data nu_plus - nu_minus of two q-positive measures."""

    plus: DiscreteQPositiveMeasure
    minus: DiscreteQPositiveMeasure

    def __post_init__(self):
        if self.plus.s != self.minus.s:
            raise ShapeError("pair components must share block size")


def validate_q_positive(nu: DiscreteQPositiveMeasure) -> list[Violation]:
    """All q-positivity violations (empty list means the measure is valid)."""
    return list(nu.violations)


def _require_valid(nu: DiscreteQPositiveMeasure, label: str) -> None:
    bad = nu.violations
    if bad:
        raise NotQPositive(
            f"{label} fails q-positivity: {bad[0].message}"
            + (f" (+{len(bad) - 1} more)" if len(bad) > 1 else ""),
            violations=bad)


def herglotz_synthesize(nu: DiscreteQPositiveMeasure, n: int) -> QMatrix:
    """Moment r(n) = sum over atoms of e^(i n t) (nu1 + nu2 j)."""
    _require_valid(nu, "measure")
    r1 = np.zeros((nu.s, nu.s), dtype=np.complex128)
    r2 = np.zeros((nu.s, nu.s), dtype=np.complex128)
    for atom in nu.atoms:
        phase = complex(math.cos(n * atom.t), math.sin(n * atom.t))
        r1 += phase * atom.nu1
        r2 += phase * atom.nu2
    return QMatrix(r1, r2)


def synthesize_indefinite(pair: MixedMeasurePair, n: int) -> QMatrix:
    """Signed moment a(n) = r_plus(n) - r_minus(n).

    The atom supports must be disjoint (circular distance > 1e-9 between
    every pair of weighted atoms); SupportOverlap otherwise.
    """
    for ap in pair.plus.atoms:
        if ap.weight_norm() == 0.0:
            continue
        for am in pair.minus.atoms:
            if am.weight_norm() == 0.0:
                continue
            if _circ_dist(ap.t, am.t) <= SPACING_TOL:
                raise SupportOverlap(
                    f"both components carry an atom at t = {ap.t:.6g}")
    return herglotz_synthesize(pair.plus, n) - herglotz_synthesize(pair.minus, n)


def card_supp(nu: DiscreteQPositiveMeasure) -> int:
    """Support cardinality: half the total rank of the assembled mu blocks.

    Every support point of the positive matrix measure mu is visited,
    including implicit partner points that carry mass only through the
    conj(nu1) corner; each block contributes its numerical rank (threshold
    1e-10 relative to the block scale).
    """
    total = 0
    for t in nu.support_points():
        block = nu._mu_block(t)
        scale = max(1.0, float(np.abs(block).max(initial=0.0)))
        w, _ = eigh_c(0.5 * (block + block.conj().T))
        total += int(np.sum(np.abs(w) > RANK_RTOL * scale))
    return total // 2


def total_mass_bound(nu: DiscreteQPositiveMeasure) -> float:
    """Sum of operator norms of the atom weights; bounds every ||r(n)||."""
    _require_valid(nu, "measure")
    return sum(op_norm(QMatrix(a.nu1, a.nu2)) for a in nu.atoms)


def _structured_psd_block(rng: np.random.Generator, s: int,
                          self_paired: bool) -> tuple[np.ndarray, np.ndarray,
                                                      np.ndarray, np.ndarray]:
    """Sample mu-block data: (nu1, nu2) at t and (nu1', nu2') at the partner."""
    g = rng.normal(size=(2 * s, 2 * s)) + 1j * rng.normal(size=(2 * s, 2 * s))
    m = g.conj().T @ g / (2 * s)
    m11, m12, m22 = m[:s, :s], m[:s, s:], m[s:, s:]
    if self_paired:
        # project onto the self-consistent structure; stays PSD because the
        # reflected block D S conj(M) S D is a congruent PSD copy
        nu1 = 0.5 * (m11 + m22.conj())
        nu2 = 0.5 * (m12 - m12.T)
        return nu1, nu2, nu1, nu2
    return m11, m12, m22.conj(), -m12.T


def random_q_positive_measure(rng: np.random.Generator, s: int, n_pairs: int,
                              min_sep: float = 0.25,
                              self_paired_prob: float = 0.25,
                              avoid: Sequence[float] = ()) -> DiscreteQPositiveMeasure:
    """Random valid measure built from sampled PSD mu blocks.

    ``n_pairs`` counts pair orbits: a generic orbit contributes atoms at t
    and 2 pi - t, a self-paired one (t = 0 or pi) a single structured atom.
    Folded positions keep circular distance >= min_sep from each other and
    from every angle in ``avoid``.  Intended for test-data generation.
    """
    margin = max(0.1, min_sep / 2.0)
    folded_taken = [min(a % TWO_PI, TWO_PI - (a % TWO_PI)) for a in avoid]
    self_paired_free = [0.0, math.pi]
    atoms = []
    for _ in range(n_pairs):
        placed = None
        use_self = False
        for _attempt in range(200):
            # re-decide the orbit type each attempt so blocked self-paired
            # slots fall back to generic positions instead of stalling
            use_self = bool(rng.random() < self_paired_prob) and bool(self_paired_free)
            if use_self:
                cand = self_paired_free[int(rng.integers(len(self_paired_free)))]
            else:
                cand = float(rng.uniform(margin, math.pi - margin))
            if all(abs(cand - f) >= min_sep for f in folded_taken):
                placed = cand
                break
        if placed is None:
            raise DegenerateSeed("could not place atoms with requested spacing")
        folded_taken.append(placed)
        if use_self:
            self_paired_free.remove(placed)
            nu1, nu2, _, _ = _structured_psd_block(rng, s, self_paired=True)
            atoms.append((placed, nu1, nu2))
        else:
            nu1, nu2, nu1p, nu2p = _structured_psd_block(rng, s, self_paired=False)
            atoms.append((placed, nu1, nu2))
            atoms.append((_partner_point(placed), nu1p, nu2p))
    return DiscreteQPositiveMeasure(s, atoms)
