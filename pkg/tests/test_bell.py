import numpy as np
import pytest

from quditqkd import bell
from quditqkd.bell import BellSpectrum
from quditqkd.galois import field
from quditqkd.verify import random_density_matrix

from conftest import SHIPPED

S = 1 / np.sqrt(2)


def test_qubit_bell_states_frozen():
    spec = field(2)
    assert np.allclose(bell.bell_state(spec, 0, 0), [S, 0, 0, S])
    assert np.allclose(bell.bell_state(spec, 0, 1), [S, 0, 0, -S])
    assert np.allclose(bell.bell_state(spec, 1, 0), [0, S, S, 0])
    assert np.allclose(bell.bell_basis(spec)[:, 1 * 2 + 0], [0, S, S, 0])


@pytest.mark.parametrize("d", SHIPPED)
def test_basis_orthonormal_and_maximally_entangled(d):
    spec = field(d)
    b = bell.bell_basis(spec)
    assert np.abs(b.conj().T @ b - np.eye(d * d)).max() < 1e-12
    ra, rb = bell.marginals(bell.bell_projector(spec, 1 % d, d - 1), d)
    assert np.allclose(ra, np.eye(d) / d) and np.allclose(rb, np.eye(d) / d)


def test_twirl_of_product_state_frozen():
    # |00>: lambda_00 = lambda_01 = 1/2, then the orbit averages (0,1) with (1,0)
    spec = field(2)
    rho = np.zeros((4, 4))
    rho[0, 0] = 1
    lam = BellSpectrum.from_state(bell.twirl(rho, spec), spec).lam
    assert np.allclose(lam, [[0.5, 0.25], [0.25, 0.0]], atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_twirl_idempotent_and_bell_diagonal(d):
    spec = field(d)
    rho = random_density_matrix(d * d, np.random.default_rng(d))
    t1 = bell.twirl(rho, spec)
    t2 = bell.twirl(t1, spec)
    assert np.abs(t1 - t2).max() < 1e-12
    b = bell.bell_basis(spec)
    inb = b.conj().T @ t1 @ b
    assert np.abs(inb - np.diag(np.diag(inb))).max() < 1e-12
    assert bell.orbit_asymmetry(np.diag(inb).real.reshape(d, d), spec, "field") < 1e-12


def test_twirl_rejects_non_states():
    with pytest.raises(ValueError):
        bell.twirl(np.eye(4), field(2))


def test_qutrit_orbit_frozen():
    assert sorted(bell.orbit(field(3), 1, 0)) == [(0, 1), (0, 2), (1, 0), (2, 0)]


EXPECTED_COUNTS = {
    2: {1: 2, 2: 1}, 3: {1: 1, 4: 2}, 4: {1: 2, 2: 1, 4: 3}, 5: {1: 1, 4: 6},
    7: {1: 1, 4: 12}, 8: {1: 2, 2: 1, 4: 15}, 9: {1: 1, 4: 20},
}


@pytest.mark.parametrize("d", SHIPPED)
def test_symmetry_class_counts(d):
    classes = bell.symmetry_classes(field(d))
    assert classes.counts() == EXPECTED_COUNTS[d]
    members = [mn for c in classes.classes for mn in c.members]
    assert sorted(members) == [(m, n) for m in range(d) for n in range(d)]


def test_field_convention_differs_in_char_two():
    # GF(4) negation is trivial, so the field orbits are shorter than the tabulated ones
    counts = bell.symmetry_classes(field(4), "field").counts()
    assert counts == {1: 4, 2: 6}


def test_symmetrize_is_projection(rng):
    spec = field(5)
    lam = rng.random((5, 5))
    s = bell.symmetrize(lam, spec)
    assert bell.orbit_asymmetry(s, spec) < 1e-15
    assert np.allclose(bell.symmetrize(s, spec), s)
    assert np.isclose(s.sum(), lam.sum())


def test_spectrum_validation():
    spec = field(2)
    with pytest.raises(ValueError):
        BellSpectrum(spec, np.array([[0.5, 0.5], [0.5, 0.0]]))
    with pytest.raises(ValueError):
        BellSpectrum(spec, np.array([[1.1, -0.1], [0.0, 0.0]]))
    assert BellSpectrum.pure(spec).fidelity == 1.0
    assert np.allclose(BellSpectrum.uniform(spec).lam, 0.25)


def test_isotropic_pattern_roundtrip():
    lam = bell.isotropic_lambda(3, 0.4, 0.1, 0.05)
    assert np.isclose(lam.sum(), 0.4 + 4 * 0.1 + 4 * 0.05)
    assert bell.isotropic_pattern(lam) == pytest.approx((0.4, 0.1, 0.05))
    assert bell.isotropic_pattern(np.arange(9.0).reshape(3, 3)) is None
