import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from quditqkd import linalg


def _herm(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def test_pauli_y_spectrum():
    w, v = linalg.jacobi_eigh(np.array([[0, -1j], [1j, 0]]))
    assert np.allclose(w, [-1, 1], atol=1e-14)
    assert linalg.is_unitary(v)


def test_known_tridiagonal():
    # eigenvalues of tridiag(-1, 2, -1) of size n: 2 - 2cos(k pi/(n+1))
    n = 7
    a = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    expected = 2 - 2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    assert np.allclose(linalg.jacobi_eigvalsh(a), np.sort(expected), atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 9, 16, 25])
def test_matches_lapack(rng, n):
    a = _herm(rng, n)
    w, v = linalg.jacobi_eigh(a)
    assert np.abs(w - np.linalg.eigvalsh(a)).max() < 1e-11
    assert np.abs(a @ v - v * w).max() < 1e-10
    assert linalg.is_unitary(v, 1e-11)


def test_block_split_is_equivalent(rng):
    a = np.zeros((6, 6), dtype=complex)
    a[:3, :3] = _herm(rng, 3)
    a[3:, 3:] = _herm(rng, 3)
    w1, _ = linalg.jacobi_eigh(a, split_blocks=True)
    w2, _ = linalg.jacobi_eigh(a, split_blocks=False)
    assert np.allclose(w1, w2, atol=1e-12)


def test_degenerate_spectrum():
    w, v = linalg.jacobi_eigh(np.ones((4, 4)))
    assert np.allclose(w, [0, 0, 0, 4], atol=1e-12)
    assert linalg.is_unitary(v, 1e-12)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        linalg.jacobi_eigh(np.array([[0, 1], [0, 0]]))


def test_not_converged():
    rng = np.random.default_rng(0)
    with pytest.raises(linalg.NotConvergedError):
        linalg.jacobi_eigh(_herm(rng, 8), max_sweeps=1)


def test_predicates():
    assert linalg.is_density_matrix(np.eye(3) / 3)
    assert not linalg.is_density_matrix(np.eye(3))
    assert not linalg.is_psd(np.diag([1.0, -0.1]))
    assert not linalg.is_hermitian(np.ones((2, 3)))
    assert linalg.kron(np.eye(2), np.eye(3)).shape == (6, 6)
    assert linalg.off_diagonal_norm(np.array([[1, 3], [4, 2]])) == 5.0


finite = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, (5, 5), elements=finite), arrays(np.float64, (5, 5), elements=finite))
def test_property_trace_and_frobenius(re, im):
    a = re + 1j * im
    a = (a + a.conj().T) / 2
    w = linalg.jacobi_eigvalsh(a)
    scale = max(1.0, np.linalg.norm(a))
    assert abs(w.sum() - np.trace(a).real) < 1e-10 * scale
    assert abs(np.sqrt((w ** 2).sum()) - np.linalg.norm(a)) < 1e-10 * scale
    assert np.all(np.diff(w) >= 0)
