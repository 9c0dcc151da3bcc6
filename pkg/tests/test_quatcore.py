import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qherglotz import (FrameError, QMatrix, Quaternion, ShapeError,
                       SymmetryViolation, adjoint, chi_embed, chi_inverse,
                       embed_in_plane, frame_complete, imaginary_unit,
                       is_unit_imaginary, qhstack, qmul, qvstack,
                       random_qmatrix, scale_of, split_coefficient)
from qherglotz.quatcore import I, J, K, ONE, ZERO

finite = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, finite, finite, finite, finite)


class TestQuaternion:
    def test_unit_table(self):
        assert (I * J).approx_eq(K)
        assert (J * K).approx_eq(I)
        assert (K * I).approx_eq(J)
        assert (J * I).approx_eq(-K)
        for u in (I, J, K):
            assert (u * u).approx_eq(-ONE)

    def test_product_example(self):
        got = (ONE + I) * (ONE + J)
        assert got.approx_eq(Quaternion(1, 1, 1, 1))

    def test_noncommutative(self):
        assert not (I * J).approx_eq(J * I)

    def test_real_scalar_multiplication(self):
        q = Quaternion(1, 2, 3, 4)
        assert (2 * q).approx_eq(q * 2)
        assert (2 * q).approx_eq(q.times(2.0))

    def test_inverse(self):
        q = Quaternion(1, -2, 0.5, 3)
        assert (q * q.inverse()).approx_eq(ONE, 1e-14)
        assert (q.inverse() * q).approx_eq(ONE, 1e-14)
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    def test_complex_pair_round_trip(self):
        q = Quaternion(0.3, -1.5, 2.0, 0.25)
        c1, c2 = q.to_complex_pair()
        assert c1 == complex(0.3, -1.5) and c2 == complex(2.0, 0.25)
        assert Quaternion.from_complex_pair(c1, c2) == q

    def test_frozen(self):
        with pytest.raises(Exception):
            Quaternion(1).w = 2.0

    @given(quaternions, quaternions, quaternions)
    @settings(max_examples=200, deadline=None)
    def test_associativity(self, a, b, c):
        lhs = (a * b) * c
        rhs = a * (b * c)
        bound = 1e-9 * max(1.0, a.norm() * b.norm() * c.norm())
        assert (lhs - rhs).norm() <= bound

    @given(quaternions, quaternions)
    @settings(max_examples=200, deadline=None)
    def test_norm_multiplicative(self, a, b):
        assert abs((a * b).norm() - a.norm() * b.norm()) \
            <= 1e-9 * max(1.0, a.norm() * b.norm())

    @given(quaternions, quaternions)
    @settings(max_examples=200, deadline=None)
    def test_conj_reverses_products(self, a, b):
        lhs = (a * b).conj()
        rhs = b.conj() * a.conj()
        assert (lhs - rhs).norm() <= 1e-9 * max(1.0, a.norm() * b.norm())

    @given(quaternions, quaternions, quaternions)
    @settings(max_examples=200, deadline=None)
    def test_distributivity(self, a, b, c):
        lhs = a * (b + c)
        rhs = a * b + a * c
        bound = 1e-9 * max(1.0, a.norm() * (b.norm() + c.norm()))
        assert (lhs - rhs).norm() <= bound

    @given(quaternions)
    @settings(max_examples=200, deadline=None)
    def test_conj_recovers_norm(self, a):
        prod = a * a.conj()
        assert abs(prod.w - a.norm_sq()) <= 1e-9 * max(1.0, a.norm_sq())
        assert abs(prod.x) + abs(prod.y) + abs(prod.z) \
            <= 1e-9 * max(1.0, a.norm_sq())


class TestFrames:
    def test_imaginary_unit_normalizes(self):
        u = imaginary_unit(3.0, 0.0, 4.0)
        assert is_unit_imaginary(u)
        assert u.approx_eq(Quaternion(0, 0.6, 0, 0.8))
        with pytest.raises(FrameError):
            imaginary_unit(0, 0, 0)

    def test_frame_complete_j(self):
        ju, ku = frame_complete(J)
        assert ju == K and ku == I

    def test_frame_complete_random(self, rng):
        for _ in range(25):
            v = rng.normal(size=3)
            iu = imaginary_unit(*v)
            ju, ku = frame_complete(iu)
            assert is_unit_imaginary(ju) and is_unit_imaginary(ku)
            assert abs(float(iu.imag_vec() @ ju.imag_vec())) < 1e-12
            assert (iu * ju).approx_eq(ku, 1e-12)
            assert (iu * ju - ju * iu).norm() > 1.9  # anticommute

    def test_split_coefficient_example(self):
        a = Quaternion(2, 3, 4, 5)
        c1, c2 = split_coefficient(a, I, J)
        assert c1 == complex(2, 3) and c2 == complex(4, 5)

    def test_split_reconstructs(self, rng):
        for _ in range(25):
            iu = imaginary_unit(*rng.normal(size=3))
            ju, _ = frame_complete(iu)
            a = Quaternion(*rng.normal(size=4))
            c1, c2 = split_coefficient(a, iu, ju)
            back = embed_in_plane(c1, iu) + embed_in_plane(c2, iu) * ju
            assert back.approx_eq(a, 1e-12)

    def test_split_rejects_bad_frame(self):
        with pytest.raises(FrameError):
            split_coefficient(ONE, I, I)

    def test_embed_in_plane(self):
        got = embed_in_plane(complex(0.5, -2.0), J)
        assert got.approx_eq(Quaternion(0.5, 0, -2.0, 0))


class TestChiEmbedding:
    def test_chi_of_k(self):
        m = chi_embed(QMatrix.from_scalar(K))
        expected = np.array([[0, 1j], [1j, 0]])
        assert np.abs(m - expected).max() == 0.0

    def test_homomorphism(self, rng):
        for _ in range(20):
            a = random_qmatrix(rng, 3, 3, 1.0)
            b = random_qmatrix(rng, 3, 3, 1.0)
            lhs = chi_embed(a @ b)
            rhs = chi_embed(a) @ chi_embed(b)
            scale = max(1.0, np.abs(rhs).max())
            assert np.abs(lhs - rhs).max() <= 1e-12 * scale

    def test_star_compatibility(self, rng):
        a = random_qmatrix(rng, 3, 4, 1.0)
        assert np.abs(chi_embed(adjoint(a)) - chi_embed(a).conj().T).max() \
            <= 1e-14

    def test_round_trip(self, rng):
        a = random_qmatrix(rng, 2, 5, 1.0)
        back = chi_inverse(chi_embed(a))
        assert back == a

    def test_chi_inverse_rejects_asymmetric(self):
        with pytest.raises(SymmetryViolation):
            chi_inverse(np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex))
        with pytest.raises(ShapeError):
            chi_inverse(np.ones((3, 3), dtype=complex))


class TestQMatrix:
    def test_entry_and_shape(self):
        m = QMatrix.from_entries([[ONE, I], [J, K]])
        assert m.shape == (2, 2)
        assert m.entry(0, 1) == I and m.entry(1, 0) == J

    def test_matmul_against_scalars(self, rng):
        a = Quaternion(*rng.normal(size=4))
        b = Quaternion(*rng.normal(size=4))
        prod = QMatrix.from_scalar(a) @ QMatrix.from_scalar(b)
        assert prod.to_quaternion().approx_eq(a * b, 1e-12)

    def test_adjoint_involution(self, rng):
        a = random_qmatrix(rng, 3, 2, 1.0)
        assert adjoint(adjoint(a)) == a
        assert a.adjoint() == adjoint(a)

    def test_adjoint_reverses_products(self, rng):
        a = random_qmatrix(rng, 3, 2, 1.0)
        b = random_qmatrix(rng, 2, 4, 1.0)
        lhs = adjoint(a @ b)
        rhs = adjoint(b) @ adjoint(a)
        assert lhs.allclose(rhs, 1e-12)

    def test_scalar_scaling_matches_matmul(self, rng):
        q = Quaternion(*rng.normal(size=4))
        m = random_qmatrix(rng, 2, 3, 1.0)
        left = m.scale_left(q)
        via = (QMatrix.diag([q, q]) @ m)
        assert left.allclose(via, 1e-12)
        right = m.scale_right(q)
        via_r = m @ QMatrix.diag([q, q, q])
        assert right.allclose(via_r, 1e-12)

    def test_stacking(self):
        a = QMatrix.from_scalar(ONE)
        b = QMatrix.from_scalar(J)
        h = qhstack([a, b])
        v = qvstack([a, b])
        assert h.shape == (1, 2) and v.shape == (2, 1)
        assert h.entry(0, 1) == J and v.entry(1, 0) == J
        with pytest.raises(ShapeError):
            qhstack([])
        with pytest.raises(ShapeError):
            qvstack([a, QMatrix.zeros(1, 2)])

    def test_immutable(self, rng):
        m = random_qmatrix(rng, 2, 2, 1.0)
        with pytest.raises(AttributeError):
            m.p1 = np.zeros((2, 2))
        with pytest.raises(ValueError):
            m.p1[0, 0] = 5.0

    def test_equality_is_exact(self):
        a = QMatrix.from_scalar(Quaternion(0.1))
        b = QMatrix.from_scalar(Quaternion(0.1 + 1e-18))
        assert a == b  # identical floats after rounding
        c = QMatrix.from_scalar(Quaternion(0.1 + 1e-12))
        assert a != c

    def test_diag_and_identity(self):
        d = QMatrix.diag([I, J])
        assert d.entry(0, 0) == I and d.entry(1, 1) == J
        assert d.entry(0, 1) == ZERO
        assert QMatrix.identity(3).entry(2, 2) == ONE

    def test_norms(self):
        m = QMatrix.from_entries([[Quaternion(3), Quaternion(0, 4)]])
        assert m.norm_fro() == pytest.approx(5.0)
        assert m.max_entry() == pytest.approx(4.0)
        assert scale_of(m) == pytest.approx(4.0)
        assert scale_of(QMatrix.zeros(1, 1)) == 1.0
