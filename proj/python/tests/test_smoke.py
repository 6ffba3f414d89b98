"""Smoke tests for the python bindings; the heavy numerics live in the C++ suites."""

import math

import numpy as np
import pytest

import _schottky as sk


def test_zoo_matrices():
    B = sk.zoo.rm_tau(1 + 1j)
    assert B.shape == (4, 4)
    assert np.allclose(B, B.T)
    assert np.all(np.linalg.eigvalsh(B.imag) > 0)

    H = sk.zoo.hyperelliptic(3)
    assert H.shape == (3, 3)

    for name, g in [("bring", 4), ("fermat5", 6), ("fricke_macbeath", 7)]:
        assert sk.zoo.embedded(name).shape == (g, g)
    with pytest.raises(sk.SchottkyError):
        sk.zoo.embedded("nope")


def test_check_separates_locus():
    B = sk.zoo.rm_tau(1 + 1j)
    v = sk.check(B)
    assert v["in_locus"]
    assert v["delta_min"] < 1e-10
    assert v["witness"] is not None
    assert v["witness"]["X"].shape == (4,)

    vp = sk.check(sk.zoo.diagonal_perturbation(B, 0.1))
    assert not vp["in_locus"]
    assert vp["delta_min"] > 1e-5
    assert vp["witness"] is None


def test_igusa_agrees():
    B = sk.zoo.rm_tau(1 + 1j)
    assert abs(sk.igusa(B)) < 1e-12
    assert abs(sk.igusa(sk.zoo.diagonal_perturbation(B, 0.1))) > 1e-2
    with pytest.raises(sk.SchottkyError):
        sk.igusa(sk.zoo.hyperelliptic(5))


def test_reduce():
    B = sk.zoo.hyperelliptic(4)
    r = sk.reduce(B)
    assert r["y_min_after"] >= math.sqrt(3) / 2 - 1e-9
    assert np.allclose(r["reduced"], r["reduced"].T)


def test_theta_reference_value():
    val, grad = sk.theta(
        np.zeros(1, dtype=complex),
        np.array([[1j]]),
        np.zeros(1),
        np.zeros(1),
        8,
    )
    assert abs(val - 1.0864348112133080146) < 1e-15
    assert abs(grad[0]) < 1e-15


def test_sweep():
    B = sk.zoo.rm_tau(1 + 1j)
    M = np.fromfunction(lambda j, k: (j + k + 2) / 5.0, (4, 4))
    rows = sk.sweep(B, M, [1e-14, 1e-3], n_max=40)
    assert rows[0]["best_residual"] < 1e-9
    assert rows[1]["best_residual"] > 1e-5


def test_invalid_matrix_rejected():
    with pytest.raises(sk.SchottkyError):
        sk.check(np.array([[1j, 0.5], [0.4, 1j]]))  # not symmetric
