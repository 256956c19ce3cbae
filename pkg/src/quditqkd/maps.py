"""Distillability maps over the (D, x - y) plane for isotropic Bell spectra."""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.sparse.csgraph import connected_components

from .bell import BellSpectrum, bell_basis, isotropic_lambda, symmetrize, symmetry_classes
from .criteria import PPT_TOL, REDUCTION_TOL, evaluate, partial_transpose, threshold_disturbance
from .disturbance import disturbance_of_spectrum
from .galois import field

FEASIBILITY_TOL = 1e-12
DEFAULT_DELTA_RANGES = {2: (-0.5, 0.5), 3: (-0.35, 0.35), 4: (-0.3, 0.3), 5: (-0.25, 0.25)}
PGM_LEVELS = {"A": 0, "C": 85, "B": 170, "INFEASIBLE": 255}


@dataclass(frozen=True)
class IsotropicSpectrum:
    d: int
    u: float
    x: float
    y: float

    def lam(self) -> np.ndarray:
        return isotropic_lambda(self.d, self.u, self.x, self.y)

    def bell_spectrum(self) -> BellSpectrum:
        lam = np.clip(self.lam(), 0.0, None)
        return BellSpectrum(field(self.d), lam / lam.sum())


def _solve(d: int, D, delta):
    y = (D - (d - 1) * delta) / (d * (d - 1))
    x = delta + y
    u = 1.0 - 2 * (d - 1) * x - (d - 1) ** 2 * y
    return u, x, y


def solve_isotropic(d: int, D: float, delta: float) -> IsotropicSpectrum | None:
    """Solve the isotropic parameters for disturbance ``D`` and ``delta = x - y``.

    Returns ``None`` when any of u, x, y falls below ``-FEASIBILITY_TOL``.
    """
    u, x, y = _solve(d, D, delta)
    if min(u, x, y) < -FEASIBILITY_TOL:
        return None
    return IsotropicSpectrum(d, float(u), float(x), float(y))


@dataclass(frozen=True)
class MapCell:
    D: float
    delta: float
    u: float
    x: float
    y: float
    cls: str  # "A", "B", "C" or "INFEASIBLE"


def classify(d: int, D: float, delta: float) -> MapCell:
    """Classify one point with the full :func:`criteria.evaluate` path."""
    u, x, y = _solve(d, D, delta)
    iso = solve_isotropic(d, D, delta)
    if iso is None:
        return MapCell(D, delta, u, x, y, "INFEASIBLE")
    return MapCell(D, delta, u, x, y, evaluate(iso.bell_spectrum()).label)


# -- batched engine -------------------------------------------------------------

@lru_cache(maxsize=None)
def _pt_basis(d: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per-block partial transposes of the three isotropic Bell components.

    Returns the index blocks and, for each block, an array of shape
    (3, k, k) holding the u-, x- and y-components.
    """
    spec = field(d)
    b = bell_basis(spec)
    comps = []
    for mask in ("origin", "axis", "bulk"):
        w = np.zeros((d, d))
        if mask == "origin":
            w[0, 0] = 1.0
        elif mask == "axis":
            w[0, 1:] = 1.0
            w[1:, 0] = 1.0
        else:
            w[1:, 1:] = 1.0
        op = partial_transpose((b * w.reshape(-1)) @ b.conj().T, d)
        op[np.abs(op) < 1e-13] = 0.0
        comps.append(op)
    pattern = np.any([c != 0 for c in comps], axis=0)
    ncomp, labels = connected_components(pattern, directed=False)
    blocks, mats = [], []
    for comp in range(ncomp):
        idx = np.nonzero(labels == comp)[0]
        blocks.append(idx)
        mats.append(np.array([c[np.ix_(idx, idx)] for c in comps]))
    return blocks, mats


def batched_pt_min(d: int, u: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Smallest partial-transpose eigenvalue for a batch of isotropic states (LAPACK)."""
    _, mats = _pt_basis(d)
    out = np.full(u.shape, np.inf)
    coeff = np.stack([u, x, y], axis=-1)
    for m in mats:
        block = np.tensordot(coeff, m, axes=([-1], [0]))
        block = (block + np.conj(np.swapaxes(block, -1, -2))) / 2
        out = np.minimum(out, np.linalg.eigvalsh(block)[..., 0])
    return out


def classify_batch(d: int, D: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, ...]:
    """Vectorised classification; returns ``(u, x, y, labels)``."""
    D = np.asarray(D, dtype=float)
    delta = np.asarray(delta, dtype=float)
    u, x, y = _solve(d, D, delta)
    feasible = np.minimum(np.minimum(u, x), y) >= -FEASIBILITY_TOL
    labels = np.full(D.shape, "INFEASIBLE", dtype=object)
    if feasible.any():
        uf, xf, yf = (np.clip(v[feasible], 0.0, None) for v in (u, x, y))
        # same normalisation as IsotropicSpectrum.bell_spectrum
        norm = uf + 2 * (d - 1) * xf + (d - 1) ** 2 * yf
        uf, xf, yf = uf / norm, xf / norm, yf / norm
        lam_max = np.maximum(uf, np.maximum(xf, yf))
        violated = lam_max > 1.0 / d + REDUCTION_TOL
        pt_min = batched_pt_min(d, uf, xf, yf)
        lab = np.where(violated, "A", np.where(pt_min > -PPT_TOL, "B", "C")).astype(object)
        labels[feasible] = lab
    return u, x, y, labels


@dataclass(frozen=True)
class MapGrid:
    """Cells in row-major order: D outer (ascending), delta inner (ascending)."""

    d: int
    D_values: np.ndarray
    delta_values: np.ndarray
    u: np.ndarray
    x: np.ndarray
    y: np.ndarray
    labels: np.ndarray

    @property
    def resolution(self) -> tuple[int, int]:
        return len(self.D_values), len(self.delta_values)

    @property
    def D_step(self) -> float:
        return float(self.D_values[1] - self.D_values[0])

    def cells(self) -> Iterable[MapCell]:
        for i, D in enumerate(self.D_values):
            for j, dl in enumerate(self.delta_values):
                yield MapCell(float(D), float(dl), float(self.u[i, j]), float(self.x[i, j]),
                              float(self.y[i, j]), str(self.labels[i, j]))

    def counts(self) -> dict[str, int]:
        vals, cnt = np.unique(self.labels.astype(str), return_counts=True)
        return dict(zip(vals.tolist(), cnt.tolist()))


def sweep(
    d: int,
    D_range: tuple[float, float] = (0.0, 1.0),
    delta_range: tuple[float, float] | None = None,
    resolution: tuple[int, int] = (512, 512),
    workers: int = 1,
    chunk_rows: int = 64,
) -> MapGrid:
    """Classify every cell of an ``nD x nDelta`` grid.

    Rows are split into chunks; every cell is classified independently, so
    the output does not depend on ``workers`` or ``chunk_rows``.
    """
    nD, nDelta = resolution
    if nD < 2 or nDelta < 2:
        raise ValueError("resolution must be at least 2 in each axis")
    if delta_range is None:
        delta_range = DEFAULT_DELTA_RANGES.get(d, (-0.25, 0.25))
    Ds = np.linspace(D_range[0], D_range[1], nD)
    deltas = np.linspace(delta_range[0], delta_range[1], nDelta)
    DD, LL = np.meshgrid(Ds, deltas, indexing="ij")
    starts = list(range(0, nD, chunk_rows))

    def run(s: int):
        return classify_batch(d, DD[s : s + chunk_rows], LL[s : s + chunk_rows])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    u, x, y, labels = (np.concatenate([p[k] for p in parts], axis=0) for k in range(4))
    return MapGrid(d, Ds, deltas, u, x, y, labels)


class ThresholdNotBracketed(ValueError):
    pass


def empirical_threshold(grid: MapGrid) -> float:
    """Smallest D on the grid with a feasible cell outside class A."""
    non_a = (grid.labels != "A") & (grid.labels != "INFEASIBLE")
    rows = np.nonzero(non_a.any(axis=1))[0]
    if rows.size == 0 or rows[0] == 0:
        raise ThresholdNotBracketed("grid does not bracket the threshold")
    return float(grid.D_values[rows[0]])


# -- output formats ----------------------------------------------------------------

def write_csv(grid: MapGrid, dest: str | Path | io.TextIOBase) -> None:
    """``d,D,delta,u,x,y,class`` rows with round-trip float formatting and LF endings."""
    def emit(fh):
        fh.write("d,D,delta,u,x,y,class\n")
        for c in grid.cells():
            fh.write(f"{grid.d},{c.D!r},{c.delta!r},{c.u!r},{c.x!r},{c.y!r},{c.cls}\n")

    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="\n") as fh:
            emit(fh)
    else:
        emit(dest)


def read_csv(src: str | Path) -> list[MapCell]:
    cells = []
    with open(src) as fh:
        header = fh.readline().strip()
        if header != "d,D,delta,u,x,y,class":
            raise ValueError(f"unexpected header {header!r}")
        for line in fh:
            _, D, dl, u, x, y, cls = line.rstrip("\n").split(",")
            cells.append(MapCell(float(D), float(dl), float(u), float(x), float(y), cls))
    return cells


def write_pgm(grid: MapGrid, dest: str | Path) -> None:
    """Plain PGM, one pixel per cell; x axis = D ascending, top row = largest delta."""
    nD, nDelta = grid.resolution
    levels = np.vectorize(PGM_LEVELS.__getitem__)(grid.labels.astype(str))
    img = levels.T[::-1]
    with open(dest, "w", newline="\n") as fh:
        fh.write(f"P2\n{nD} {nDelta}\n255\n")
        for row in img:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


# -- non-isotropic sampling --------------------------------------------------------

def sample_symmetric(d: int, n: int, seed: int = 0) -> list[tuple[BellSpectrum, float, str]]:
    """Random Bell spectra with the tabulated orbit symmetry, classified.

    Class weights are Dirichlet-distributed, so all symmetric spectra are
    reachable.  Used where a full grid over every free parameter is too big.
    """
    spec = field(d)
    classes = symmetry_classes(spec, "table").classes
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        w = rng.dirichlet(np.full(len(classes), 0.5))
        lam = np.zeros((d, d))
        for wc, c in zip(w, classes):
            for m, nn in c.members:
                lam[m, nn] = wc / c.size
        lam = symmetrize(lam, spec, "table")
        sp = BellSpectrum(spec, lam / lam.sum())
        out.append((sp, disturbance_of_spectrum(sp).D, evaluate(sp).label))
    return out


def threshold_for(d: int) -> float:
    return threshold_disturbance(d)
