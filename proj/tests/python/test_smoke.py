import math

import numpy as np
import pytest

import prdg


def test_meshes():
    tri = prdg.make_mesh("tri", 4)
    assert tri.num_elements == 32
    assert tri.total_area == pytest.approx(1.0)
    poly = prdg.make_mesh("poly", 40, seed=2)
    assert poly.num_elements == 40
    assert poly.barycenters.shape == (40, 2)
    assert np.all((poly.barycenters > 0) & (poly.barycenters < 1))


def test_zero_data_gives_zero_solution():
    sol, rec = prdg.solve("zero", "voronoi", 50, k=2)
    assert np.all(sol.dofs == 0)
    assert sol((0.3, 0.4)) == 0.0
    assert rec["ncells"] == 50


def test_convergence_rate():
    recs = prdg.run_convergence("ex1a", "tri", [8, 16, 32], k=1)
    l2 = [r["l2"] for r in recs]
    h = [r["h"] for r in recs]
    rates = prdg.rates(l2, h)
    assert len(rates) == 2
    assert rates[-1] > 1.5
    assert prdg.observed_rate(1e-2, 2.5e-3, 0.1, 0.05) == pytest.approx(2.0)
    assert prdg.fitted_rate([1.0, 0.25], [1.0, 0.5]) == pytest.approx(2.0)
    assert prdg.observed_rate(0.0, 1.0, 0.1, 0.05) is None


def test_layer_example():
    sol, rec = prdg.solve("ex4", "voronoi", 160, k=1, nu=1e-9)
    assert math.isfinite(sol((0.5, 0.5)))
    assert rec["l2"] == 0.0  # no exact solution


def test_errors():
    assert prdg.default_patch_size("tri", 2) == 7
    assert prdg.default_patch_size("tri", 4) is None
    with pytest.raises(ValueError):
        prdg.solve("ex9", "tri", 4)
    with pytest.raises(ValueError):
        prdg.solve("ex1a", "tri", 4, k=2, patch_size=3)
    with pytest.raises(ValueError):
        prdg.make_mesh("hex", 4)
