"""Distillability and separability tests for Bell-diagonal two-qudit states."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .bell import BellSpectrum, bell_basis, bell_diagonal
from .disturbance import disturbance_of_spectrum
from .galois import FieldError, FieldSpec, is_prime_power
from .linalg import is_hermitian, jacobi_eigvalsh

# Boundary handling: weights within REDUCTION_TOL of 1/d and PT eigenvalues
# within PPT_TOL of zero count as non-distillable.
REDUCTION_TOL = 1e-12
PPT_TOL = 1e-10
PSD_TOL = 1e-9


class Classification(enum.Enum):
    DISTILLABLE_NPPT = "A"
    PPT = "B"
    NPPT_REDUCTION_SATISFIED = "C"


def partial_transpose(rho: np.ndarray, d: int) -> np.ndarray:
    """Transpose the B factor of a (d^2 x d^2) operator."""
    return np.asarray(rho).reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def partial_transpose_spectrum(rho: np.ndarray, d: int) -> np.ndarray:
    """Ascending eigenvalues of the partial transpose, via Jacobi rotations."""
    rho = np.asarray(rho)
    if not is_hermitian(rho, tol=1e-10):
        raise ValueError("partial_transpose_spectrum expects a Hermitian matrix")
    return jacobi_eigvalsh(partial_transpose(rho, d))


def reduction_operator(rho: np.ndarray, d: int) -> np.ndarray:
    """``rho_A (x) 1 - rho``; positive for every separable state."""
    rho_a = np.einsum("ikjk->ij", np.asarray(rho).reshape(d, d, d, d))
    return np.kron(rho_a, np.eye(d)) - rho


@dataclass(frozen=True)
class Verdict:
    max_lambda: float
    fidelity: float
    reduction_violated: bool
    ppt_min_eigenvalue: float
    classification: Classification

    @property
    def label(self) -> str:
        return self.classification.value


def classify_flags(reduction_violated: bool, ppt_min: float) -> Classification:
    if reduction_violated:
        return Classification.DISTILLABLE_NPPT
    if ppt_min > -PPT_TOL:
        return Classification.PPT
    return Classification.NPPT_REDUCTION_SATISFIED


def evaluate(spectrum: BellSpectrum) -> Verdict:
    """Reduction criterion, fidelity and PT sign of a Bell-diagonal state.

    Weights above ``1/d`` violate the reduction criterion, which suffices
    for distillability.  Otherwise the state is PPT (class B) or NPPT with
    the reduction criterion satisfied (class C).
    """
    d = spectrum.d
    lam_max = float(spectrum.lam.max())
    violated = lam_max > 1.0 / d + REDUCTION_TOL
    ppt_min = float(partial_transpose_spectrum(bell_diagonal(spectrum), d)[0])
    return Verdict(lam_max, spectrum.fidelity, violated, ppt_min, classify_flags(violated, ppt_min))


def _check_dimension(d: int) -> None:
    if not is_prime_power(int(d)):
        raise FieldError(f"d={d} is not a prime power")


def threshold_disturbance(d: int) -> float:
    """``(d - 1) / 2d``: the largest disturbance that still certifies distillable entanglement."""
    _check_dimension(d)
    return (d - 1) / (2 * d)


def cloning_bound(d: int) -> float:
    """``1 - 1/sqrt(d)``, the optimal-cloning comparison curve."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return 1.0 - 1.0 / math.sqrt(d)


def qutrit_pt_block(u: float, x: float, y: float) -> np.ndarray:
    """The 3x3 block repeated three times in the partial transpose of an isotropic qutrit state."""
    return np.array(
        [
            [u + 2 * x, x - y, x - y],
            [x - y, x + 2 * y, u - x],
            [x - y, u - x, x + 2 * y],
        ]
    ) / 3.0


def qutrit_nu(u: float, x: float, y: float) -> tuple[float, float]:
    """Closed-form ``(nu1, nu2)`` as printed for the qutrit block."""
    nu1 = (-u + 2 * x + 2 * y) / 3.0
    nu2 = (u + x + y - math.sqrt(3.0) * (x - y)) / 3.0
    return nu1, nu2


def qutrit_block_eigenvalues(u: float, x: float, y: float) -> tuple[float, float, float]:
    """All three eigenvalues of :func:`qutrit_pt_block`.

    The third, ``(u + x + y + sqrt(3)(x - y)) / 3``, is the smallest one
    whenever ``x < y``; ``nu1, nu2`` alone fix the sign only for ``x >= y``.
    """
    nu1, nu2 = qutrit_nu(u, x, y)
    nu3 = (u + x + y + math.sqrt(3.0) * (x - y)) / 3.0
    return nu1, nu2, nu3


# -- separable family ---------------------------------------------------------

def family_interval(d: int) -> tuple[float, float]:
    return (d - 1) / (2 * d), (2 * d - 1) / (2 * d)


def family_xy(d: int, D: float) -> tuple[float, float]:
    x = (1 + d * (d - 2) * (1 - D)) / (d * d * (d - 1))
    y = (1 + d * (-1 + 2 * D)) / (d * d * (d - 1))
    return x, y


def shift_coherence(spec: FieldSpec, i: int) -> np.ndarray:
    """``(1/d) sum_k |k><k+i|``."""
    d = spec.d
    out = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    out[k, spec.add_table[k, i]] = 1.0 / d
    return out


@dataclass(frozen=True)
class SeparableFamilyPoint:
    D: float
    x: float
    y: float
    state: np.ndarray = dc_field(repr=False)
    spectrum: BellSpectrum = dc_field(repr=False)

    def diagnostics(self) -> dict[str, float]:
        d = self.spectrum.d
        rho = self.state
        b = bell_basis(self.spectrum.spec)
        in_bell = b.conj().T @ rho @ b
        return {
            "trace": float(np.trace(rho).real),
            "min_eig": float(np.linalg.eigvalsh(rho)[0]),
            "hermitian_residual": float(np.max(np.abs(rho - rho.conj().T))),
            "bell_offdiag": float(np.max(np.abs(in_bell - np.diag(np.diag(in_bell))))),
            "max_lambda": float(self.spectrum.lam.max()),
            "disturbance": disturbance_of_spectrum(self.spectrum).D,
            "ppt_min": float(partial_transpose_spectrum(rho, d)[0]),
        }


def separable_family(spec: FieldSpec, D: float, signed: bool = True) -> SeparableFamilyPoint:
    """Separable Bell-diagonal state reproducing disturbance ``D``.

    ``sigma = y*1 + d*c*sum_k |kk><kk|/d + d*c*sum_i s_i (x) s_i`` with
    ``s_i = (1/d) sum_k |k><k+i|`` and ``c = x - y``.  With ``signed=False``
    the coefficient is ``|x - y|``, which loses unit trace once
    ``D > (d-1)/d``.
    """
    d = spec.d
    lo, hi = family_interval(d)
    if not lo - 1e-12 <= D <= hi + 1e-12:
        raise ValueError(f"D={D} outside the family interval [{lo}, {hi}] for d={d}")
    x, y = family_xy(d, D)
    c = (x - y) if signed else abs(x - y)
    diag_kk = np.zeros((d * d, d * d), dtype=complex)
    k = np.arange(d)
    diag_kk[k * d + k, k * d + k] = 1.0
    coh = sum(np.kron(shift_coherence(spec, i), shift_coherence(spec, i)) for i in range(d))
    sigma = y * np.eye(d * d) + d * c * diag_kk / d + d * c * coh
    if not is_hermitian(sigma, tol=1e-12):
        raise AssertionError("assembled family operator is not Hermitian")
    spectrum = BellSpectrum.from_state(sigma, spec, renormalize=not signed)
    return SeparableFamilyPoint(float(D), x, y, sigma, spectrum)
