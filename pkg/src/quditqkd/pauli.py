"""Generalized Pauli (Weyl-Heisenberg) operators over GF(d) and the Fourier transform.

Phases are evaluated as ``exp(2j*pi*t/p)`` from integer trace values ``t``,
so each matrix entry picks up exactly one rounding step.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .galois import FieldElement, FieldSpec


class PauliIndex(NamedTuple):
    """Shift ``m`` and phase ``n`` of an error operator, as canonical field indices."""

    m: int
    n: int

    @classmethod
    def of(cls, m: FieldElement | int, n: FieldElement | int) -> "PauliIndex":
        if isinstance(m, FieldElement) and isinstance(n, FieldElement) and m.spec != n.spec:
            raise ValueError("m and n must come from the same field")
        return cls(int(m), int(n))


def _idx(x: FieldElement | int) -> int:
    return int(x)


def roots_of_unity(spec: FieldSpec) -> np.ndarray:
    """``omega**t`` for t = 0..p-1 with ``omega = exp(2*pi*i/p)``."""
    return np.exp(2j * np.pi * np.arange(spec.p) / spec.p)


def phase_table(spec: FieldSpec) -> np.ndarray:
    """``omega**tr(a*b)`` for all index pairs (a, b)."""
    tr = spec.trace_table[spec.mul_table]
    return roots_of_unity(spec)[tr]


def shift(spec: FieldSpec, m: FieldElement | int) -> np.ndarray:
    """``X^m = sum_k |k+m><k|``."""
    d = spec.d
    out = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    out[spec.add_table[k, _idx(m)], k] = 1.0
    return out


def phase(spec: FieldSpec, n: FieldElement | int) -> np.ndarray:
    """``Z^n = sum_k omega^tr(k*n) |k><k|``."""
    return np.diag(phase_table(spec)[:, _idx(n)])


def pauli(spec: FieldSpec, idx: PauliIndex | tuple[int, int]) -> np.ndarray:
    """Error operator ``E_mn = sum_k omega^tr(k*n) |k+m><k|``.

    >>> from quditqkd.galois import field
    >>> pauli(field(2), (1, 1)).real
    array([[ 0., -1.],
           [ 1.,  0.]])
    """
    m, n = _idx(idx[0]), _idx(idx[1])
    d = spec.d
    k = np.arange(d)
    out = np.zeros((d, d), dtype=complex)
    out[spec.add_table[k, m], k] = phase_table(spec)[k, n]
    return out


def all_paulis(spec: FieldSpec) -> np.ndarray:
    """Stack of shape (d, d, d, d): ``ops[m, n]`` is ``E_mn``."""
    d = spec.d
    return np.array([[pauli(spec, (m, n)) for n in range(d)] for m in range(d)])


def commutation_phase(spec: FieldSpec, m: FieldElement | int, n: FieldElement | int) -> complex:
    """Phase in ``Z^n X^m = omega^tr(m*n) X^m Z^n``."""
    t = int(spec.trace_table[spec.mul_table[_idx(m), _idx(n)]])
    return complex(roots_of_unity(spec)[t])


def commutation_residual(spec: FieldSpec, m: FieldElement | int, n: FieldElement | int) -> float:
    x, z = shift(spec, m), phase(spec, n)
    return float(np.linalg.norm(z @ x - commutation_phase(spec, m, n) * x @ z))


def fourier(spec: FieldSpec) -> np.ndarray:
    """``H = d^(-1/2) sum_ij omega^tr(i*j) |i><j|``; symmetric and unitary."""
    return phase_table(spec) / np.sqrt(spec.d)


def error_swap_residual(spec: FieldSpec, idx: PauliIndex | tuple[int, int]) -> float:
    """Frobenius norm of ``H^dag E_mn H - omega^(-tr(m*n)) conj(E_nm)``."""
    m, n = _idx(idx[0]), _idx(idx[1])
    h = fourier(spec)
    lhs = h.conj().T @ pauli(spec, (m, n)) @ h
    rhs = commutation_phase(spec, m, n).conjugate() * pauli(spec, (n, m)).conj()
    return float(np.linalg.norm(lhs - rhs))


def mub_bases(spec: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """Computational basis and its Fourier dual, basis vectors as columns.

    The dual vectors are ``|l~> = sum_k H_lk |k>``, i.e. the columns of ``H``
    (H is symmetric).
    """
    return np.eye(spec.d, dtype=complex), fourier(spec)


def mub_overlaps(spec: FieldSpec) -> np.ndarray:
    b1, b2 = mub_bases(spec)
    return np.abs(b1.conj().T @ b2) ** 2
