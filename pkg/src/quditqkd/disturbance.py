"""Error projector and the two-basis averaged disturbance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import BellSpectrum, bell_basis, symmetry_classes, twirl
from .galois import FieldSpec
from .linalg import is_density_matrix
from .pauli import fourier


@dataclass(frozen=True)
class DisturbanceReport:
    D: float
    shift_error_part: float
    phase_error_part: float


def error_projector(spec: FieldSpec) -> np.ndarray:
    """``P = sum_l sum_{k != 0} |l, l+k><l, l+k|``: outcomes of A and B differ."""
    d = spec.d
    diag = np.ones(d * d)
    diag[np.arange(d) * d + np.arange(d)] = 0.0
    return np.diag(diag).astype(complex)


def error_projector_bell(spec: FieldSpec) -> np.ndarray:
    """The same projector assembled from Bell states with nonzero shift."""
    d = spec.d
    b = bell_basis(spec)
    w = np.ones((d, d))
    w[0, :] = 0.0
    return (b * w.reshape(-1)) @ b.conj().T


def basis_error_observable(spec: FieldSpec, b: int) -> np.ndarray:
    """``(H^b^dag (x) H^b) P (H^b (x) H^b^dag)`` for basis choice b in {0, 1}."""
    h = np.linalg.matrix_power(fourier(spec), b)
    left = np.kron(h.conj().T, h)
    right = np.kron(h, h.conj().T)
    return left @ error_projector(spec) @ right


def disturbance_of_state(rho: np.ndarray, spec: FieldSpec) -> DisturbanceReport:
    rho = np.asarray(rho)
    if rho.shape != (spec.d**2, spec.d**2) or not is_density_matrix(rho, tol=1e-8):
        raise ValueError("disturbance_of_state expects a valid two-qudit density matrix")
    parts = [float(np.trace(basis_error_observable(spec, b) @ rho).real) for b in (0, 1)]
    D = min(max(0.5 * (parts[0] + parts[1]), 0.0), 1.0)
    return DisturbanceReport(D, parts[0], parts[1])


def disturbance_of_spectrum(spectrum: BellSpectrum) -> DisturbanceReport:
    lam = spectrum.lam
    shift_part = float(lam[1:, :].sum())
    phase_part = float(lam[:, 1:].sum())
    return DisturbanceReport(0.5 * (shift_part + phase_part), shift_part, phase_part)


def disturbance_by_classes(spectrum: BellSpectrum) -> float:
    """Class-weighted disturbance for a spectrum with the tabulated orbit symmetry.

    Odd d: ``2*sum(axis eta) + 4*sum(bulk eta)``.
    Even d: ``xi1 + zeta + 2*sum(axis eta) + 4*sum(bulk eta)``.
    Values are read from one representative per class.
    """
    classes = symmetry_classes(spectrum.spec, "table")
    lam = spectrum.lam
    total = 0.0
    for c in classes.classes:
        val = lam[c.members[0]]
        if c.tag == "xi1" or c.tag == "zeta":
            total += val
        elif c.tag.startswith("eta"):
            total += (2.0 if c.on_axis else 4.0) * val
    return float(total)


def twirl_invariance_residual(rho: np.ndarray, spec: FieldSpec) -> float:
    return abs(disturbance_of_state(rho, spec).D - disturbance_of_state(twirl(rho, spec), spec).D)
