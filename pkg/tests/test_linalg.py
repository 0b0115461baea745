import numpy as np
import pytest

from sshent.linalg import eigh_symmetric


def _cofactor_det(a):
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * _cofactor_det(minor)
    return total


def test_two_by_two():
    es = eigh_symmetric(np.array([[0.0, -2.0], [-2.0, 0.0]]))
    np.testing.assert_allclose(es.eigenvalues, [-2.0, 2.0], atol=1e-14)


def test_identity():
    es = eigh_symmetric(np.eye(7))
    np.testing.assert_allclose(es.eigenvalues, np.ones(7), atol=1e-14)
    assert es.orthonormality_defect() < 1e-12


def test_reconstruction_residual(rng):
    a = rng.standard_normal((50, 50))
    a = a + a.T
    es = eigh_symmetric(a)
    rebuilt = es.eigenvectors @ np.diag(es.eigenvalues) @ es.eigenvectors.T
    rel = np.linalg.norm(rebuilt - a) / np.linalg.norm(a)
    assert rel < 1e-10
    assert es.residual(a) < 1e-10 * np.max(np.abs(a))
    assert es.orthonormality_defect() < 1e-10
    assert np.all(np.diff(es.eigenvalues) >= 0.0)


def test_trace_preserved(rng):
    a = rng.standard_normal((30, 30))
    a = a + a.T
    es = eigh_symmetric(a)
    assert np.sum(es.eigenvalues) == pytest.approx(np.trace(a), rel=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_determinant_vs_cofactor_expansion(rng, n):
    a = rng.standard_normal((n, n))
    a = a + a.T
    es = eigh_symmetric(a)
    det_eig = float(np.prod(es.eigenvalues))
    det_cof = _cofactor_det(a)
    assert det_eig == pytest.approx(det_cof, rel=1e-9)


def test_rejects_non_symmetric():
    with pytest.raises(ValueError, match="not symmetric"):
        eigh_symmetric(np.array([[0.0, 1.0], [0.5, 0.0]]))


def test_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        eigh_symmetric(np.zeros((3, 2)))
