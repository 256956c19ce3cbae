"""Generalized Bell states, Bell-diagonal states, symmetry classes and twirling."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Literal

import numpy as np

from .galois import FieldSpec
from .linalg import is_density_matrix
from .pauli import all_paulis, fourier

Convention = Literal["table", "field"]


def bell_basis(spec: FieldSpec) -> np.ndarray:
    """Unitary of shape (d^2, d^2) whose column ``m*d + n`` is ``|Psi_mn>``.

    ``|Psi_mn> = d^(-1/2) sum_k |k> (x) E_mn |k>``; tensor index ``a*d + b``
    stands for ``|a>_A |b>_B``.
    """
    d = spec.d
    ops = all_paulis(spec)
    out = np.empty((d * d, d * d), dtype=complex)
    for m in range(d):
        for n in range(d):
            # column k of E_mn is E_mn|k>
            out[:, m * d + n] = ops[m, n].T.reshape(-1) / np.sqrt(d)
    return out


def bell_state(spec: FieldSpec, m: int, n: int) -> np.ndarray:
    return bell_basis(spec)[:, int(m) * spec.d + int(n)]


def bell_projector(spec: FieldSpec, m: int, n: int) -> np.ndarray:
    v = bell_state(spec, m, n)
    return np.outer(v, v.conj())


@dataclass(frozen=True)
class BellSpectrum:
    """Weights ``lam[m, n]`` of a Bell-diagonal two-qudit state."""

    spec: FieldSpec
    lam: np.ndarray = dc_field(repr=False)

    def __post_init__(self) -> None:
        lam = np.array(self.lam, dtype=float)
        d = self.spec.d
        if lam.shape != (d, d):
            raise ValueError(f"spectrum must have shape ({d}, {d}), got {lam.shape}")
        if np.any(lam < -1e-12):
            raise ValueError(f"negative Bell weight {lam.min():.3e}")
        if abs(lam.sum() - 1.0) > 1e-12:
            raise ValueError(f"Bell weights sum to {lam.sum():.15g}, not 1")
        lam = np.clip(lam, 0.0, None)
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def fidelity(self) -> float:
        return float(self.lam[0, 0])

    @classmethod
    def from_state(cls, rho: np.ndarray, spec: FieldSpec, renormalize: bool = False) -> "BellSpectrum":
        """Diagonal of ``rho`` in the Bell basis; imaginary parts above 1e-10 are an error."""
        b = bell_basis(spec)
        diag = np.einsum("ij,jk,ki->i", b.conj().T, rho, b)
        if np.max(np.abs(diag.imag)) > 1e-10:
            raise ValueError("Bell-basis diagonal is not real")
        lam = diag.real.reshape(spec.d, spec.d)
        lam = np.where(np.abs(lam) < 1e-15, 0.0, lam)
        if renormalize:
            lam = np.clip(lam, 0.0, None)
            lam = lam / lam.sum()
        return cls(spec, lam)

    @classmethod
    def pure(cls, spec: FieldSpec, m: int = 0, n: int = 0) -> "BellSpectrum":
        lam = np.zeros((spec.d, spec.d))
        lam[m, n] = 1.0
        return cls(spec, lam)

    @classmethod
    def uniform(cls, spec: FieldSpec) -> "BellSpectrum":
        return cls(spec, np.full((spec.d, spec.d), 1.0 / spec.d**2))


def bell_diagonal(spectrum: BellSpectrum) -> np.ndarray:
    """Density matrix ``sum lam_mn |Psi_mn><Psi_mn|``."""
    b = bell_basis(spectrum.spec)
    return (b * spectrum.lam.reshape(-1)) @ b.conj().T


def marginals(rho: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    r = rho.reshape(d, d, d, d)
    return np.einsum("ikjk->ij", r), np.einsum("kikj->ij", r)


# -- symmetry group and twirl ---------------------------------------------------

def g1_unitaries(spec: FieldSpec) -> list[np.ndarray]:
    """``E_mn (x) conj(E_mn)`` for all (m, n)."""
    ops = all_paulis(spec)
    d = spec.d
    return [np.kron(ops[m, n], ops[m, n].conj()) for m in range(d) for n in range(d)]


def g2_unitaries(spec: FieldSpec) -> list[np.ndarray]:
    """``(H (x) conj(H))^b`` for b = 0..3."""
    h = fourier(spec)
    u = np.kron(h, h.conj())
    out = [np.eye(spec.d**2, dtype=complex)]
    for _ in range(3):
        out.append(u @ out[-1])
    return out


def twirl(rho: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Average ``rho`` over both symmetry groups of the disturbance.

    Computes ``(1/4d^2) sum_{g,h} U(h) U(g) rho U(g)^dag U(h)^dag``.  The
    result is Bell-diagonal and its spectrum is invariant under
    ``(m, n) -> (n, -m)`` with field negation.
    """
    rho = np.asarray(rho)
    if rho.shape != (spec.d**2, spec.d**2) or not is_density_matrix(rho):
        raise ValueError("twirl expects a two-qudit density matrix")
    acc = np.zeros_like(rho, dtype=complex)
    for u in g1_unitaries(spec):
        acc += u @ rho @ u.conj().T
    out = np.zeros_like(acc)
    for u in g2_unitaries(spec):
        out += u @ acc @ u.conj().T
    return out / (4 * spec.d**2)


def negation(spec: FieldSpec, convention: Convention = "table") -> np.ndarray:
    """Index map used for ``d - m``.

    ``"table"`` takes ``(d - m) mod d`` on canonical integer labels, which is
    the labeling behind the eigenvalue tables.  ``"field"`` takes the additive
    inverse in GF(d), which is what the Fourier twirl actually induces.  Both
    agree for prime d.
    """
    if convention == "table":
        return (-np.arange(spec.d)) % spec.d
    if convention == "field":
        return np.asarray(spec.neg_table)
    raise ValueError(f"unknown convention {convention!r}")


def orbit(spec: FieldSpec, m: int, n: int, convention: Convention = "table") -> list[tuple[int, int]]:
    neg = negation(spec, convention)
    out = [(int(m), int(n))]
    while True:
        a, b = out[-1]
        nxt = (b, int(neg[a]))
        if nxt == out[0]:
            return out
        out.append(nxt)


@dataclass(frozen=True)
class SymClass:
    tag: str
    members: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def on_axis(self) -> bool:
        return any(m == 0 or n == 0 for m, n in self.members)


@dataclass(frozen=True)
class SymmetryClasses:
    spec: FieldSpec
    convention: str
    classes: tuple[SymClass, ...]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.classes:
            out[c.size] = out.get(c.size, 0) + 1
        return dict(sorted(out.items()))

    def by_tag(self, tag: str) -> SymClass:
        for c in self.classes:
            if c.tag == tag:
                return c
        raise KeyError(tag)


def symmetry_classes(spec: FieldSpec, convention: Convention = "table") -> SymmetryClasses:
    """Partition of index pairs into orbits of ``(m, n) -> (n, d - m)``.

    Singletons are tagged ``xi0, xi1, ...`` with ``xi0`` at the origin, pairs
    ``zeta`` (``zeta0, zeta1, ...`` if there is more than one), quadruples
    ``eta1, eta2, ...``.  Quadruples touching row 0 or column 0 come first.
    """
    d = spec.d
    seen: set[tuple[int, int]] = set()
    orbits: list[tuple[tuple[int, int], ...]] = []
    for m in range(d):
        for n in range(d):
            if (m, n) in seen:
                continue
            o = tuple(sorted(orbit(spec, m, n, convention)))
            seen.update(o)
            orbits.append(o)
    singles = [o for o in orbits if len(o) == 1]
    pairs = [o for o in orbits if len(o) == 2]
    quads = [o for o in orbits if len(o) == 4]
    quads.sort(key=lambda o: (not any(m == 0 or n == 0 for m, n in o), o))
    classes = [SymClass(f"xi{j}", o) for j, o in enumerate(singles)]
    if len(pairs) == 1:
        classes.append(SymClass("zeta", pairs[0]))
    else:
        classes += [SymClass(f"zeta{j}", o) for j, o in enumerate(pairs)]
    classes += [SymClass(f"eta{j + 1}", o) for j, o in enumerate(quads)]
    return SymmetryClasses(spec, convention, tuple(classes))


def orbit_asymmetry(lam: np.ndarray, spec: FieldSpec, convention: Convention = "table") -> float:
    """Largest deviation of ``lam`` from the orbit symmetry."""
    neg = negation(spec, convention)
    lam = np.asarray(lam)
    # lam[m, n] == lam[n, -m]
    rotated = lam.T[neg, :]
    return float(np.max(np.abs(lam - rotated)))


def symmetrize(lam: np.ndarray, spec: FieldSpec, convention: Convention = "table") -> np.ndarray:
    """Replace every entry by its orbit average."""
    lam = np.asarray(lam, dtype=float)
    out = np.empty_like(lam)
    for c in symmetry_classes(spec, convention).classes:
        val = np.mean([lam[m, n] for m, n in c.members])
        for m, n in c.members:
            out[m, n] = val
    return out


def isotropic_pattern(lam: np.ndarray, tol: float = 1e-12) -> tuple[float, float, float] | None:
    """Return ``(u, x, y)`` if ``lam`` has the isotropic layout, else ``None``.

    Layout: ``u`` at the origin, ``x`` on the rest of row 0 and column 0,
    ``y`` everywhere else.
    """
    lam = np.asarray(lam)
    u = lam[0, 0]
    axis = np.concatenate([lam[0, 1:], lam[1:, 0]])
    bulk = lam[1:, 1:].reshape(-1)
    x = axis.mean() if axis.size else 0.0
    y = bulk.mean() if bulk.size else 0.0
    if np.max(np.abs(axis - x), initial=0.0) > tol or np.max(np.abs(bulk - y), initial=0.0) > tol:
        return None
    return float(u), float(x), float(y)


def isotropic_lambda(d: int, u: float, x: float, y: float) -> np.ndarray:
    lam = np.full((d, d), y, dtype=float)
    lam[0, :] = x
    lam[:, 0] = x
    lam[0, 0] = u
    return lam
