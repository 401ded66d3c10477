import json
import math

import numpy as np
import pytest

import chebfs


def test_mu_vector_counterexample_endpoint():
    t = 1.0
    p = np.array([[math.cosh(t), math.sinh(t)], [math.sinh(t), math.cosh(t)]], dtype=complex)
    mu = chebfs.mu_vector(p)
    assert mu[0] == pytest.approx(1 / math.cosh(t), abs=1e-12)
    assert mu[1] == pytest.approx(math.cosh(t), abs=1e-12)


def test_lattice_points_counts():
    assert len(chebfs.lattice_points(2, 3)) == math.comb(5, 2)
    assert chebfs.lattice_points(1, 2) == [[0, 2], [1, 1], [2, 0]]


def test_closed_form_and_finite_level():
    p = np.diag([2.0, 1.0]).astype(complex)
    closed = chebfs.cheb_closed_form(p, [0.5])
    finite = chebfs.cheb_finite_m(p, 80, [0.5])
    assert abs(finite - closed) <= 2 * math.log(80) / 80


def test_gram_and_norms():
    p = np.eye(3, dtype=complex)
    g = chebfs.gram_exact(p, 2)
    assert g.shape == (6, 6)
    assert np.allclose(g, g.conj().T)
    assert np.allclose(np.diag(g).real, chebfs.chebyshev_norms(p, 2))


def test_bergman_and_energy():
    assert chebfs.bergman_offset(1, 4) == pytest.approx(
        0.25 * math.log(5) - 0.25 * math.log(2 * math.pi), abs=1e-14
    )
    assert chebfs.bergman_exactness_defect(np.array([1.0, -1.0]), 4) <= 1e-8
    p = np.array([[2.0, 0.5j], [-0.5j, 1.0]])
    assert chebfs.energy_okounkov(p, 3.0 * p) == pytest.approx(math.log(3.0), abs=1e-12)
    value, estimate = chebfs.energy_chart(p, np.eye(2, dtype=complex))
    assert abs(value + chebfs.energy_okounkov(p, np.eye(2, dtype=complex))) <= 1e-3
    assert estimate >= 0


def test_counterexample_report_and_cli():
    report = json.loads(chebfs.counterexample_report())
    assert report["chebyshev_affine"]["affine"] is False
    assert report["energy_linearity"]["defect"] <= 1e-12
    code, out, _ = chebfs.run_cli(["mu", "--p", "diag:2,1"])
    assert code == 0
    assert json.loads(out)["mu"] == pytest.approx([2.0, 1.0])


def test_errors_are_exceptions():
    with pytest.raises(chebfs.DefinitenessError):
        chebfs.mu_vector(np.diag([1.0, -1.0]).astype(complex))
    with pytest.raises(chebfs.Error):
        chebfs.lattice_points(-1, 2)
    code, _, err = chebfs.run_cli(["mu", "--p", "diag:1,-1"])
    assert code == 1 and "error" in json.loads(err)
