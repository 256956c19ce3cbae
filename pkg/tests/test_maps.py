import numpy as np
import pytest

from quditqkd import maps
from quditqkd.criteria import threshold_disturbance


def test_solve_isotropic_frozen():
    iso = maps.solve_isotropic(2, 0.25, 0.0)
    assert (iso.u, iso.x, iso.y) == pytest.approx((0.625, 0.125, 0.125))
    assert maps.solve_isotropic(3, 0.0, 0.2) is None


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_solution_reproduces_D(d):
    from quditqkd.disturbance import disturbance_of_spectrum
    iso = maps.solve_isotropic(d, 0.3, 0.01)
    assert disturbance_of_spectrum(iso.bell_spectrum()).D == pytest.approx(0.3, abs=1e-12)
    assert iso.x - iso.y == pytest.approx(0.01)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_batched_agrees_with_jacobi_path(d):
    grid = maps.sweep(d, resolution=(21, 21))
    for c in list(grid.cells())[::3]:
        assert maps.classify(d, c.D, c.delta).cls == c.cls


def test_qubit_map_shape():
    grid = maps.sweep(2, resolution=(201, 101))
    Ds = grid.D_values[:, None] * np.ones_like(grid.labels, dtype=float)
    feasible = grid.labels != "INFEASIBLE"
    outer = feasible & ((Ds < 0.25 - 1e-12) | (Ds > 0.75 + 1e-12))
    assert np.all(grid.labels[outer] == "A")
    assert "C" not in grid.counts()
    for i, D in enumerate(grid.D_values):
        if 0.25 <= D <= 0.75:
            assert np.any(np.isin(grid.labels[i], ["B"]))


def test_empirical_threshold_qutrit():
    grid = maps.sweep(3, resolution=(301, 401))
    assert abs(maps.empirical_threshold(grid) - 1 / 3) <= grid.D_step + 1e-12


def test_not_bracketed():
    grid = maps.sweep(3, D_range=(0.0, 0.2), resolution=(11, 11))
    with pytest.raises(maps.ThresholdNotBracketed):
        maps.empirical_threshold(grid)


def test_workers_do_not_change_output():
    a = maps.sweep(4, resolution=(40, 30), chunk_rows=7)
    b = maps.sweep(4, resolution=(40, 30), workers=3, chunk_rows=5)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.u, b.u)


def test_csv_roundtrip(tmp_path):
    grid = maps.sweep(3, resolution=(5, 4))
    path = tmp_path / "m.csv"
    maps.write_csv(grid, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.startswith(b"d,D,delta,u,x,y,class\n")
    cells = maps.read_csv(path)
    assert [c.cls for c in cells] == [c.cls for c in grid.cells()]
    assert [c.u for c in cells] == [c.u for c in grid.cells()]


def test_pgm_layout(tmp_path):
    grid = maps.sweep(3, resolution=(6, 4))
    path = tmp_path / "m.pgm"
    maps.write_pgm(grid, path)
    lines = path.read_text().splitlines()
    assert lines[:3] == ["P2", "6 4", "255"]
    top = [int(v) for v in lines[3].split()]
    assert top == [maps.PGM_LEVELS[str(l)] for l in grid.labels[:, -1]]


@pytest.mark.parametrize("d", [3, 4])
def test_symmetric_samples_below_threshold_are_distillable(d):
    # beyond the isotropic slice: symmetric spectra with D < D_th stay in class A
    th = threshold_disturbance(d)
    for sp, D, label in maps.sample_symmetric(d, 300, seed=d):
        if D < th - 1e-9:
            assert label == "A"
