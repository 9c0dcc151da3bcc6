"""Shared random-input builders for the test modules."""

import numpy as np

from qherglotz import QMatrix, adjoint, random_qmatrix


def random_hermitian(rng, n, sigma=1.0):
    a = random_qmatrix(rng, n, n, sigma)
    return (a + adjoint(a)).times_real(0.5)


def random_psd(rng, n, sigma=1.0):
    g = random_qmatrix(rng, n, n, sigma)
    return adjoint(g) @ g


def chi_eigvals(a):
    """Oracle: eigenvalues of the complex embedding via LAPACK."""
    from qherglotz import chi_embed
    return np.linalg.eigvalsh(chi_embed(a))


def scalar_matrix(q):
    return QMatrix.from_scalar(q)
