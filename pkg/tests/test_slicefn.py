import cmath
import math

import numpy as np
import pytest

from qherglotz import (CaratheodoryFunction, FrameError, HermitianSequence,
                       OutOfDomain, QMatrix, Quaternion, ShapeError,
                       SliceAtom, SliceMeasure, SlicePowerSeries, adjoint,
                       caratheodory_kernel, coefficient_from_measure,
                       embed_in_plane, eval_series, frame_complete,
                       herglotz_kernel_global, herglotz_kernel_slice,
                       herglotz_synthesize, imaginary_unit,
                       kernel_negative_squares, negative_squares,
                       phi_from_sequence, random_q_positive_measure,
                       representation_formula, synthesize_slice,
                       total_mass_bound)
from qherglotz.quatcore import I, J, K

from helpers import scalar_matrix


def sc(x):
    return scalar_matrix(Quaternion(x))


def random_frame(rng):
    iu = imaginary_unit(*rng.standard_normal(3))
    ju, ku = frame_complete(iu)
    return iu, ju, ku


def ball_point(rng, radius):
    vec = rng.standard_normal(4)
    vec = vec / max(1.0, float(np.linalg.norm(vec)))
    return Quaternion(*(radius * vec))


def scalar_seq(values):
    return HermitianSequence([sc(v) for v in values])


class TestEvalSeries:
    def test_constant(self):
        f = SlicePowerSeries((sc(3.0),))
        p = Quaternion(0.5, 0.1, 0, 0)
        out = eval_series(f, p)
        assert out.value.allclose(sc(3.0), 1e-15)
        # finite radius keeps the geometric tail estimate alive even for
        # a constant: dropped coefficients are assumed to share the bound
        rho = abs(p)
        assert abs(out.tail_bound - 3.0 * rho / (1.0 - rho)) <= 1e-12

    def test_geometric_partial_sum(self):
        # 1 + 2 sum p^n truncated at degree 20, evaluated at p = 1/2.
        # The closed form (1+p)/(1-p) gives 3; the dropped tail is 2^-19
        # and the stated bound matches it.
        deg = 20
        f = SlicePowerSeries((sc(1.0),) + tuple(sc(2.0) for _ in range(deg)))
        out = eval_series(f, Quaternion(0.5))
        assert out.value.to_quaternion().approx_eq(
            Quaternion(3.0 - 2.0 ** (-19)), 1e-15)
        assert abs(out.tail_bound - 2.0 ** (-19)) <= 1e-20

    def test_left_power_convention(self):
        # sum p^n a_n with p = i, a_2 = j gives i^2 j = -j, not j i^2.
        f = SlicePowerSeries((sc(0.0), sc(0.0), QMatrix.from_scalar(J)),
                             radius=math.inf)
        out = eval_series(f, I)
        assert out.value.to_quaternion().approx_eq(J.times(-1.0), 1e-15)
        assert out.tail_bound == 0.0

    def test_out_of_domain(self):
        f = SlicePowerSeries((sc(1.0), sc(1.0)))
        with pytest.raises(OutOfDomain):
            eval_series(f, Quaternion(1.0))

    def test_infinite_radius_polynomial(self):
        f = SlicePowerSeries((sc(1.0), sc(2.0)), radius=math.inf)
        out = eval_series(f, Quaternion(5.0))
        assert out.value.to_quaternion().approx_eq(Quaternion(11.0), 1e-14)

    def test_shape_validation(self):
        with pytest.raises(ShapeError):
            SlicePowerSeries(())
        with pytest.raises(ShapeError):
            SlicePowerSeries((sc(1.0), QMatrix.zeros(2, 2)))
        with pytest.raises(ShapeError):
            SlicePowerSeries((QMatrix.zeros(1, 2),))


class TestRepresentationFormula:
    def test_same_plane_collapses(self):
        fp, fm = sc(2.0), sc(5.0)
        out = representation_formula(fp, fm, J, J)
        assert out.allclose(fp, 1e-15)

    def test_constant(self):
        c = QMatrix.from_scalar(Quaternion(1.0, 2.0, 3.0, 4.0))
        out = representation_formula(c, c, K, J)
        assert out.allclose(c, 1e-15)

    def test_square_function(self):
        # f(p) = p^2 sampled on the j plane extends to the k plane
        x, y = 0.3, 0.7
        zp = Quaternion(x, 0.0, y, 0.0)
        zm = Quaternion(x, 0.0, -y, 0.0)
        out = representation_formula(QMatrix.from_scalar(zp * zp),
                                     QMatrix.from_scalar(zm * zm), K, J)
        target = Quaternion(x, 0.0, 0.0, y)
        assert out.to_quaternion().approx_eq(target * target, 1e-14)

    def test_consistent_with_series_eval(self, rng):
        # a left power series is a slice function, so two-point data on
        # the J plane must reproduce the direct evaluation on the I plane
        for trial in range(10):
            deg = int(rng.integers(0, 9))
            coeffs = []
            for _ in range(deg + 1):
                p1 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                p2 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                coeffs.append(QMatrix(p1, p2))
            f = SlicePowerSeries(tuple(coeffs))
            iu, ju, _ = random_frame(rng)
            x = float(rng.uniform(-0.4, 0.4))
            y = float(rng.uniform(0.05, 0.4))
            fp = eval_series(f, Quaternion(x) + ju.times(y)).value
            fm = eval_series(f, Quaternion(x) - ju.times(y)).value
            direct = eval_series(f, Quaternion(x) + iu.times(y)).value
            ext = representation_formula(fp, fm, iu, ju)
            scale = max(1.0, direct.max_entry())
            assert (ext - direct).max_entry() <= 1e-10 * scale

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            representation_formula(sc(1.0), QMatrix.zeros(2, 2), I, J)


class TestSliceKernel:
    def test_center(self):
        assert herglotz_kernel_slice(0.0, 1.7) == 1.0 + 0.0j

    def test_real_axis_values(self):
        x = 0.4
        assert abs(herglotz_kernel_slice(x, 0.0) - (1 + x) / (1 - x)) <= 1e-15
        assert abs(herglotz_kernel_slice(x, math.pi) - (1 - x) / (1 + x)) <= 1e-15

    def test_poisson_real_part(self, rng):
        for _ in range(100):
            r = float(rng.uniform(0.0, 0.95))
            th = float(rng.uniform(0.0, 2.0 * math.pi))
            t = float(rng.uniform(0.0, 2.0 * math.pi))
            z = r * cmath.exp(1j * th)
            lam = herglotz_kernel_slice(z, t)
            poisson = (1 - r * r) / abs(cmath.exp(1j * t) - z) ** 2
            assert abs(lam.real - poisson) <= 1e-12 * max(1.0, poisson)

    def test_boundary_rejected(self):
        with pytest.raises(OutOfDomain):
            herglotz_kernel_slice(1.0 + 0j, 0.5)


class TestGlobalKernel:
    def test_center(self):
        v = herglotz_kernel_global(Quaternion(), 2.3, I)
        assert v.approx_eq(Quaternion(1.0), 1e-15)

    def test_real_argument(self):
        x = 0.3
        v = herglotz_kernel_global(Quaternion(x), math.pi, J)
        assert v.approx_eq(Quaternion((1 - x) / (1 + x)), 1e-14)

    def test_quarter_turn_sign(self):
        # fixes the orientation of the imaginary part: at q = 1/2 and
        # t = pi/2 the kernel is (i + 1/2)/(i - 1/2) = 0.6 - 0.8 I
        v = herglotz_kernel_global(Quaternion(0.5), math.pi / 2, I)
        assert v.approx_eq(Quaternion(0.6, -0.8, 0.0, 0.0), 1e-14)

    def test_off_axis_value(self):
        v = herglotz_kernel_global(Quaternion(0, 0, 0.4, 0), math.pi / 3, I)
        series = self._series(Quaternion(0, 0, 0.4, 0), math.pi / 3, I)
        assert v.approx_eq(series, 1e-13)

    @staticmethod
    def _series(q, t, iu, terms=200):
        acc = Quaternion(1.0)
        qp = Quaternion(1.0)
        for n in range(1, terms + 1):
            qp = qp * q
            coeff = Quaternion(math.cos(n * t)) - iu.times(math.sin(n * t))
            acc = acc + (qp * coeff).times(2.0)
        return acc

    def test_matches_power_series(self, rng):
        for _ in range(25):
            q = ball_point(rng, 0.6)
            t = float(rng.uniform(0.0, 2.0 * math.pi))
            iu, _, _ = random_frame(rng)
            v = herglotz_kernel_global(q, t, iu)
            assert (v - self._series(q, t, iu)).norm() <= 1e-12

    def test_restricts_to_slice_kernel(self, rng):
        for _ in range(20):
            r = float(rng.uniform(0.0, 0.9))
            th = float(rng.uniform(0.0, math.pi))
            t = float(rng.uniform(0.0, 2.0 * math.pi))
            iu, _, _ = random_frame(rng)
            z = r * cmath.exp(1j * th)
            q = Quaternion(z.real) + iu.times(z.imag)
            v = herglotz_kernel_global(q, t, iu)
            ref = embed_in_plane(herglotz_kernel_slice(z, t), iu)
            assert (v - ref).norm() <= 1e-12

    def test_domain_and_frame_checks(self):
        with pytest.raises(OutOfDomain):
            herglotz_kernel_global(Quaternion(1.0), 0.0, I)
        with pytest.raises(FrameError):
            herglotz_kernel_global(Quaternion(0.5), 0.0, Quaternion(1.0))


class TestSliceSynthesis:
    def test_center_unit_atom(self):
        m = SliceMeasure(I, J, (SliceAtom(0.0, 1.0, 0.0),))
        assert synthesize_slice(m, 0j).approx_eq(Quaternion(1.0), 1e-15)

    def test_real_point(self):
        m = SliceMeasure(I, J, (SliceAtom(0.0, 1.0, 0.0),))
        x = 0.25
        v = synthesize_slice(m, complex(x))
        assert v.approx_eq(Quaternion((1 + x) / (1 - x)), 1e-14)

    def test_j_component_weight(self):
        m = SliceMeasure(I, J, (SliceAtom(0.0, 1.0, 0.5),))
        v = synthesize_slice(m, 0j)
        assert v.approx_eq(Quaternion(1.0) + J.times(0.5), 1e-15)

    def test_origin_imaginary_constants(self):
        m = SliceMeasure(I, J, (), imag0_f=2.0, imag0_g=3.0)
        v = synthesize_slice(m, 0.3 + 0.1j)
        assert v.approx_eq(I.times(2.0) + K.times(3.0), 1e-15)

    def test_negative_mu1_rejected(self):
        with pytest.raises(ValueError):
            SliceMeasure(I, J, (SliceAtom(0.0, -1.0, 0.0),))

    def test_frame_validation(self):
        with pytest.raises(FrameError):
            SliceMeasure(I, I, ())
        with pytest.raises(FrameError):
            SliceMeasure(Quaternion(1.0), J, ())

    def test_nonnegative_real_part(self, rng):
        for _ in range(10):
            iu, ju, _ = random_frame(rng)
            atoms = tuple(SliceAtom(float(rng.uniform(0, 2 * math.pi)),
                                    float(rng.uniform(0, 2)),
                                    float(rng.uniform(-1, 1)))
                          for _ in range(3))
            m = SliceMeasure(iu, ju, atoms,
                             float(rng.uniform(-1, 1)),
                             float(rng.uniform(-1, 1)))
            r = float(rng.uniform(0, 0.95))
            th = float(rng.uniform(0, 2 * math.pi))
            assert synthesize_slice(m, r * cmath.exp(1j * th)).w >= -1e-12

    def test_out_of_domain(self):
        m = SliceMeasure(I, J, (SliceAtom(0.0, 1.0, 0.0),))
        with pytest.raises(OutOfDomain):
            synthesize_slice(m, 1.0 + 0j)


class TestSliceCoefficients:
    def test_atom_at_zero(self):
        m = SliceMeasure(I, J, (SliceAtom(0.0, 1.0, 0.0),))
        for n in range(1, 8):
            assert coefficient_from_measure(m, n).approx_eq(
                Quaternion(2.0), 1e-15)

    def test_atom_at_pi(self):
        m = SliceMeasure(I, J, (SliceAtom(math.pi, 1.0, 0.0),))
        for n in range(1, 8):
            expected = Quaternion(2.0 * (-1.0) ** n)
            assert coefficient_from_measure(m, n).approx_eq(expected, 1e-12)

    def test_empty_measure(self):
        m = SliceMeasure(I, J, ())
        assert coefficient_from_measure(m, 3).norm() == 0.0

    def test_order_validation(self):
        m = SliceMeasure(I, J, ())
        with pytest.raises(ValueError):
            coefficient_from_measure(m, 0)

    def test_mass_bound(self, rng):
        for _ in range(10):
            iu, ju, _ = random_frame(rng)
            atoms = tuple(SliceAtom(float(rng.uniform(0, 2 * math.pi)),
                                    float(rng.uniform(0, 2)),
                                    float(rng.uniform(-1, 1)))
                          for _ in range(4))
            m = SliceMeasure(iu, ju, atoms)
            cap = 2.0 * m.mass()
            for n in range(1, 31):
                assert coefficient_from_measure(m, n).norm() <= cap + 1e-12

    def test_quadrature_recovers_coefficients(self):
        # contour integral (1/2 pi) int z^-n f(z) dtheta on |z| = 1/2,
        # 256-node trapezoid rule, matches the closed formula
        atoms = (SliceAtom(0.4, 0.7, 0.2), SliceAtom(2.2, 1.1, -0.4),
                 SliceAtom(5.0, 0.3, 0.1))
        m = SliceMeasure(I, J, atoms, 0.15, -0.25)
        radius, nodes = 0.5, 256
        for n in range(1, 6):
            acc = Quaternion()
            for k in range(nodes):
                th = 2.0 * math.pi * k / nodes
                z = radius * cmath.exp(1j * th)
                zin = embed_in_plane(z ** (-n), I)
                acc = acc + zin * synthesize_slice(m, z)
            acc = acc.times(1.0 / nodes)
            ref = coefficient_from_measure(m, n)
            assert (acc - ref).norm() <= 1e-8


class TestPhiEvaluation:
    def test_point_mass_at_one(self):
        # r(n) identically 1 sums to (1+x)/(1-x)
        seq = scalar_seq([1.0] * 22)
        out = phi_from_sequence(seq, Quaternion(0.3), 40, coeff_bound=1.0)
        assert out.value.to_quaternion().approx_eq(Quaternion(13.0 / 7.0), 1e-10)
        assert out.tail_bound <= 1e-10

    def test_alternating_point_mass(self):
        seq = scalar_seq([(-1.0) ** n for n in range(22)])
        out = phi_from_sequence(seq, Quaternion(0.3), 40, coeff_bound=1.0)
        assert out.value.to_quaternion().approx_eq(Quaternion(7.0 / 13.0), 1e-10)

    def test_finite_support_is_exact_polynomial(self):
        seq = scalar_seq([1.0, 0.5])
        out = phi_from_sequence(seq, Quaternion(5.0), 10)
        assert out.value.to_quaternion().approx_eq(Quaternion(6.0), 1e-13)
        assert out.tail_bound == 0.0

    def test_uncertified_tail_rejected(self):
        seq = scalar_seq([1.0, 1.0, 1.0, 1.0])
        with pytest.raises(OutOfDomain):
            phi_from_sequence(seq, Quaternion(0.9), 40, coeff_bound=1.0)
        with pytest.raises(OutOfDomain):
            phi_from_sequence(seq, Quaternion(0.5), 2)

    def test_value_at_origin_is_r0(self, rng):
        nu = random_q_positive_measure(rng, 2, 3)
        seq = HermitianSequence([herglotz_synthesize(nu, n) for n in range(5)])
        phi = CaratheodoryFunction(seq)
        out = phi.value(Quaternion(), 4)
        assert out.value.allclose(seq.value(0), 1e-14)

    def test_matches_boundary_sum(self, rng):
        # phi from a measure-generated sequence equals the direct kernel
        # sum over atoms: phi(x) = sum Lambda(x, -t) (nu1 + nu2 j)
        nu = random_q_positive_measure(rng, 2, 2)
        n_terms = 60
        seq = HermitianSequence(
            [herglotz_synthesize(nu, n) for n in range(n_terms + 1)])
        phi = CaratheodoryFunction(seq)
        x = 0.2
        direct = QMatrix.zeros(2, 2)
        for atom in nu.atoms:
            lam = herglotz_kernel_slice(complex(x), -atom.t)
            direct = direct + QMatrix(lam * atom.nu1, lam * atom.nu2)
        out = phi.value(Quaternion(x), n_terms)
        gap = 2.0 * total_mass_bound(nu) * x ** (n_terms + 1) / (1.0 - x)
        assert (out.value - direct).max_entry() <= gap + 1e-12


class TestCaratheodoryKernel:
    def _unit_phi(self):
        return CaratheodoryFunction(scalar_seq([1.0]))

    def test_center(self):
        k = caratheodory_kernel(self._unit_phi(), Quaternion(), Quaternion(), 10)
        assert k.to_quaternion().approx_eq(Quaternion(1.0), 1e-15)

    def test_geometric_diagonal(self):
        k = caratheodory_kernel(self._unit_phi(), Quaternion(0.5),
                                Quaternion(0.5), 60)
        assert k.to_quaternion().approx_eq(Quaternion(4.0 / 3.0), 1e-12)

    def test_telescoping_identity(self, rng):
        nu = random_q_positive_measure(rng, 2, 2)
        seq = HermitianSequence([herglotz_synthesize(nu, n) for n in range(7)])
        phi = CaratheodoryFunction(seq)
        for _ in range(15):
            p = ball_point(rng, 0.5)
            q = ball_point(rng, 0.5)
            m = 60
            k = caratheodory_kernel(phi, p, q, m)
            w = (phi.value(p, m).value
                 + adjoint(phi.value(q, m).value)).times_real(0.5)
            residual = (k - k.scale_left(p).scale_right(q.conj()) - w).max_entry()
            assert residual <= 1e-10 * max(1.0, w.max_entry())

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            caratheodory_kernel(self._unit_phi(), Quaternion(1.0),
                                Quaternion(), 10)


class TestKernelNegativeSquares:
    def test_psd_for_positive_phi(self):
        phi = CaratheodoryFunction(scalar_seq([1.0]))
        pts = [Quaternion(-0.3), Quaternion(0.0), Quaternion(0.4)]
        inert = kernel_negative_squares(phi, pts, 40)
        assert inert.neg == 0

    def test_one_negative_square(self):
        # r(n) = 2 - (-1)^n has kappa = 1; the kernel Gram at six real
        # points shows exactly one negative eigenvalue once the phi
        # truncation tail is below the eigenvalue threshold
        seq = scalar_seq([2.0 - (-1.0) ** n for n in range(21)])
        phi = CaratheodoryFunction(seq)
        pts = [Quaternion(-0.25 + 0.1 * k) for k in range(6)]
        inert = kernel_negative_squares(phi, pts, 20)
        kappa, _, _ = negative_squares(seq, 8)
        assert kappa == 1
        assert inert.neg == 1 and inert.zero == 4 and inert.pos == 1

    def test_quaternionic_sample_points(self):
        seq = scalar_seq([2.0 - (-1.0) ** n for n in range(21)])
        phi = CaratheodoryFunction(seq)
        pts = [Quaternion(0.1, 0.15, 0.0, 0.0), Quaternion(-0.2, 0, 0.1, 0),
               Quaternion(0.0, 0.0, 0.0, 0.2), Quaternion(0.25, -0.1, 0.05, 0)]
        inert = kernel_negative_squares(phi, pts, 20)
        assert inert.neg == 1

    def test_duplicate_points_rejected(self):
        phi = CaratheodoryFunction(scalar_seq([1.0]))
        with pytest.raises(ValueError):
            kernel_negative_squares(phi, [Quaternion(0.1), Quaternion(0.1)], 10)
