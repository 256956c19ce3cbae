import numpy as np
import pytest

from quditqkd import pauli
from quditqkd.galois import field

from conftest import SHIPPED


def test_qubit_paulis_frozen():
    spec = field(2)
    assert np.allclose(pauli.pauli(spec, (1, 0)), [[0, 1], [1, 0]])
    assert np.allclose(pauli.pauli(spec, (0, 1)), [[1, 0], [0, -1]])
    # E_11 = X Z: |1><0| picks phase +1, |0><1| picks -1
    assert np.allclose(pauli.pauli(spec, (1, 1)), [[0, -1], [1, 0]])
    assert np.allclose(pauli.fourier(spec), np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_qutrit_phase_frozen():
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(pauli.phase(field(3), 1), np.diag([1, w, w ** 2]))
    assert np.allclose(pauli.shift(field(3), 1), np.roll(np.eye(3), 1, axis=0))


def test_gf4_phases_are_real():
    # p = 2, so every phase factor is +-1
    ops = pauli.all_paulis(field(4))
    assert np.abs(ops.imag).max() < 1e-15
    assert set(np.unique(np.round(ops.real, 12))) <= {-1.0, 0.0, 1.0}


@pytest.mark.parametrize("d", SHIPPED)
def test_identities_exhaustive(d):
    spec = field(d)
    worst_comm = max(pauli.commutation_residual(spec, m, n) for m in range(d) for n in range(d))
    worst_swap = max(pauli.error_swap_residual(spec, (m, n)) for m in range(d) for n in range(d))
    assert worst_comm < 1e-12
    assert worst_swap < 1e-12


@pytest.mark.parametrize("d", SHIPPED)
def test_fourier_and_mubs(d):
    spec = field(d)
    h = pauli.fourier(spec)
    assert np.abs(h - h.T).max() < 1e-14
    assert np.abs(h @ h.conj().T - np.eye(d)).max() < 1e-12
    assert np.abs(pauli.mub_overlaps(spec) - 1 / d).max() < 1e-12
    h2 = h @ h
    # H^2 is the parity permutation k -> -k
    perm = np.zeros((d, d))
    perm[spec.neg_table, np.arange(d)] = 1
    assert np.abs(h2 - perm).max() < 1e-12


def test_pauli_index_namedtuple():
    idx = pauli.PauliIndex(1, 2)
    assert idx.m == 1 and idx.n == 2
    assert np.allclose(pauli.pauli(field(3), idx), pauli.pauli(field(3), (1, 2)))
