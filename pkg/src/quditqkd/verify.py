"""Invariant checks bundled for the ``verify`` subcommand."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bell, criteria, disturbance, pauli
from .galois import FieldSpec, field


@dataclass(frozen=True)
class CheckResult:
    d: int
    name: str
    residual: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  d={self.d:<2d} {self.name:<34s} residual={self.residual:.3e}"


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _field_axioms(spec: FieldSpec) -> float:
    add, mul = spec.add_table, spec.mul_table
    d = spec.d
    bad = 0
    bad += int(np.any(add != add.T)) + int(np.any(mul != mul.T))
    for a in range(d):
        # associativity and distributivity over all b, c
        if np.any(add[add[a]] != add[a][add]):
            bad += 1
        if np.any(mul[mul[a]] != mul[a][mul]):
            bad += 1
        if np.any(mul[a][add] != add[mul[a]][:, mul[a]]):
            bad += 1
    if np.any(add[0] != np.arange(d)) or np.any(mul[1] != np.arange(d)):
        bad += 1
    if any(mul[a, spec.inv_table[a]] != 1 for a in range(1, d)):
        bad += 1
    return float(bad)


def _trace_checks(spec: FieldSpec) -> float:
    tr, add, mul = spec.trace_table, spec.add_table, spec.mul_table
    p = spec.p
    bad = 0
    for c in range(p):
        lhs = tr[add[mul[c][:, None], np.arange(spec.d)[None, :]]]
        rhs = (c * tr[:, None] + tr[None, :]) % p
        bad += int(np.count_nonzero(lhs != rhs))
    # nondegenerate trace form: distinct rows of tr(a*b)
    rows = {tuple(tr[mul[a]]) for a in range(spec.d)}
    bad += spec.d - len(rows)
    return float(bad)


def suite(d: int, tol: float = 1e-10, seed: int = 0) -> list[CheckResult]:
    spec = field(d)
    rng = np.random.default_rng(seed)
    out: list[CheckResult] = []

    def add(name: str, residual: float, limit: float | None = None) -> None:
        lim = tol if limit is None else limit
        out.append(CheckResult(d, name, float(residual), bool(residual <= lim)))

    add("field axioms (violations)", _field_axioms(spec), 0)
    add("trace linearity/nondegeneracy", _trace_checks(spec), 0)

    ops = pauli.all_paulis(spec)
    flat = ops.reshape(d * d, d, d)
    eye = np.eye(d)
    add("E_mn unitary", max(np.abs(e @ e.conj().T - eye).max() for e in flat))
    gram = np.einsum("aji,bjk->abik", flat.conj(), flat).trace(axis1=2, axis2=3)
    add("Hilbert-Schmidt orthogonality", np.abs(gram - d * np.eye(d * d)).max())
    add("commutation phase", max(pauli.commutation_residual(spec, m, n) for m in range(d) for n in range(d)))
    h = pauli.fourier(spec)
    add("H symmetric", np.abs(h - h.T).max())
    add("H unitary", np.abs(h @ h.conj().T - eye).max())
    add("error swap H^dag E H", max(pauli.error_swap_residual(spec, (m, n)) for m in range(d) for n in range(d)))
    add("MUB overlaps", np.abs(pauli.mub_overlaps(spec) - 1.0 / d).max())

    b = bell.bell_basis(spec)
    add("Bell orthonormality", np.abs(b.conj().T @ b - np.eye(d * d)).max())
    x, z = pauli.shift(spec, 1), pauli.phase(spec, 1)
    eig_res = 0.0
    for op in (np.kron(x, x.conj()), np.kron(z, z.conj())):
        vals = np.einsum("ij,jk,ki->i", b.conj().T, op, b)
        eig_res = max(eig_res, np.abs(op @ b - b * vals).max(), np.abs(np.abs(vals) - 1).max())
    add("Bell eigenrelations", eig_res)
    add("projector Bell form", np.abs(disturbance.error_projector(spec) - disturbance.error_projector_bell(spec)).max())

    counts = bell.symmetry_classes(spec, "table").counts()
    expected = {1: 2, 2: 1, 4: (d * d - 4) // 4} if spec.p == 2 else {1: 1, 4: (d * d - 1) // 4}
    expected = {k: v for k, v in expected.items() if v}
    add(f"class counts {counts}", 0.0 if counts == expected else 1.0, 0)

    lam = rng.random((d, d))
    sp = bell.BellSpectrum(spec, lam / lam.sum())
    add("disturbance: state vs spectrum",
        abs(disturbance.disturbance_of_state(bell.bell_diagonal(sp), spec).D - disturbance.disturbance_of_spectrum(sp).D))
    sym = bell.BellSpectrum(spec, bell.symmetrize(sp.lam, spec, "table"))
    add("disturbance: class-weighted form",
        abs(disturbance.disturbance_by_classes(sym) - disturbance.disturbance_of_spectrum(sym).D))

    rho = random_density_matrix(d * d, rng)
    tw = bell.twirl(rho, spec)
    in_bell = b.conj().T @ tw @ b
    add("twirl Bell-diagonal", np.abs(in_bell - np.diag(np.diag(in_bell))).max())
    add("twirl orbit symmetry", bell.orbit_asymmetry(np.diag(in_bell).real.reshape(d, d), spec, "field"))
    add("twirl preserves D", disturbance.twirl_invariance_residual(rho, spec))

    red = criteria.reduction_operator(bell.bell_diagonal(sp), d)
    add("reduction spectrum = 1/d - lambda",
        np.abs(np.sort(np.linalg.eigvalsh(red)) - np.sort(1.0 / d - sp.lam.reshape(-1))).max())

    if d == 3:
        worst = 0.0
        for _ in range(200):
            u, xx, yy = _random_iso(3, rng)
            w = criteria.partial_transpose_spectrum(bell.bell_diagonal(bell.BellSpectrum(spec, bell.isotropic_lambda(3, u, xx, yy))), 3)
            for nu in criteria.qutrit_nu(u, xx, yy):
                worst = max(worst, np.abs(w - nu).min())
        add("qutrit nu1/nu2 in PT spectrum", worst)

    lo, hi = criteria.family_interval(d)
    viol = 0.0
    for D in np.linspace(lo, hi, 9):
        dg = criteria.separable_family(spec, D).diagnostics()
        viol = max(viol, abs(dg["trace"] - 1), max(0.0, -dg["min_eig"]), abs(dg["disturbance"] - D),
                   max(0.0, dg["max_lambda"] - 1.0 / d), max(0.0, -dg["ppt_min"]))
    add("separable family invariants", viol, max(tol, 1e-9))
    return out


def _random_iso(d: int, rng: np.random.Generator) -> tuple[float, float, float]:
    w = rng.dirichlet(np.ones(3))
    return float(w[0]), float(w[1] / (2 * (d - 1))), float(w[2] / (d - 1) ** 2)

