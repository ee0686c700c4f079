import math

import numpy as np
import pytest

import quantlab


def test_s_matrix_level_one():
    d = quantlab.s_matrix(2, 1)
    assert d["labels"] == ["()", "(1)"]
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(d["S"], [[r, r], [r, -r]], atol=1e-12)


def test_s_matrix_unitary():
    S = quantlab.s_matrix(3, 4)["S"]
    np.testing.assert_allclose(S @ S.conj().T, np.eye(S.shape[0]), atol=1e-12)


def test_curve_spectrum():
    values = sorted(v.real for v, _ in quantlab.curve_spectrum("(1)", 2, 2))
    np.testing.assert_allclose(values, [-math.sqrt(2), 0, math.sqrt(2)], atol=1e-12)


def test_verlinde():
    assert quantlab.verlinde_dim(2, 1, 2)["nearest"] == 4


def test_theta_gram():
    g = quantlab.theta_gram(3, 0.3 + 0.7j)
    assert g["holomorphicity"] < 1e-8
    np.testing.assert_allclose(np.diag(g["gram"]).real, g["closed_form"], rtol=1e-8)


def test_toeplitz_hermitian():
    T = quantlab.toeplitz(5, 1j, "cos_x*cos_y + sin_y")
    np.testing.assert_allclose(T, T.conj().T, atol=1e-13)


def test_expansion_rates():
    rows = quantlab.expansion_residual("e:1,0", "e:0,1", 1j, [16, 32, 64])
    assert rows[0]["e1"] / rows[-1]["e1"] > 12


def test_star_order1():
    r = quantlab.star_order1("cos_x", "sin_y")
    assert r["poisson_residual"] < 1e-12


def test_loop_defect():
    d = quantlab.loop_defect(2)
    assert d["defect"] < 1e-8
    assert d["deviation"] > 1e-3


def test_criterion_and_cli():
    assert len(quantlab.criteria()) == 12
    assert quantlab.run_criterion(2)["pass"]
    code, log = quantlab.run(["smatrix", "--n", "2", "--k", "2", "--out", "/tmp/quantlab_py_smoke"])
    assert code == 0 and "PASS" in log


def test_errors():
    with pytest.raises(ValueError):
        quantlab.s_matrix(1, 3)
