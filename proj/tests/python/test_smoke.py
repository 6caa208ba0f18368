import numpy as np
import pytest

import rgd


def test_hand_trace():
    A = np.array([[1.0, 0.0], [0.0, 2.0]])
    b = np.array([1.0, 4.0])
    for method in ("rgdr", "rgdc"):
        rep = rgd.solve(A, b, np.array([1.0, 2.0]), method=method, theta=0.5, tol=1e-14,
                        record_trace=True)
        assert rep["iterations"] == 2
        np.testing.assert_allclose(rep["iterates"][1], [0.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(rep["iterates"][2], [1.0, 2.0], atol=1e-12)


def test_generate_and_solve_every_method():
    p = rgd.generate("randn", 200, 20, seed=4)
    assert p["A"].shape == (200, 20)
    assert p["consistent"]
    for method in rgd.methods():
        rep = rgd.solve(p["A"], p["b"], p["x_star"], method=method, block_size=10, seed=1)
        assert rep["termination"] == "converged", method
        assert rep["rse_trace"][0] == 1.0


def test_steps_and_selection():
    A = np.array([[1.0, 0.0], [0.0, 2.0]])
    b = np.array([1.0, 4.0])
    assert rgd.relaxed_greedy_set(A, b, 0.5) == [1]
    assert rgd.relaxed_greedy_set(A, np.zeros(2), 0.5) is None
    x, r, w = rgd.rgdr_step(A, b, np.zeros(2), [1])
    np.testing.assert_array_equal(x, [0.0, 2.0])
    np.testing.assert_array_equal(r, [1.0, 0.0])
    assert w == 0.25
    x, r, y, h = rgd.rgdc_step(A, b, np.zeros(2), [1])
    np.testing.assert_array_equal(x, [0.0, 2.0])
    np.testing.assert_array_equal(y, [1.0, 0.0])
    losses = rgd.row_losses(A, b)
    assert losses["max_loss"] == 4.0
    assert abs(losses["weighted_mean"] - 3.4) < 1e-15


def test_linear_algebra_helpers():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((30, 8))
    b = rng.standard_normal(30)
    np.testing.assert_allclose(rgd.cgls(A, b), np.linalg.lstsq(A, b, rcond=None)[0], rtol=1e-8)
    np.testing.assert_allclose(rgd.singular_values(A), np.linalg.svd(A, compute_uv=False),
                               rtol=1e-10)
    assert rgd.flops_rgdr(2, 2, 1) == 27
    assert rgd.flops_rgdc(2, 1) == 23


def test_certify_and_errors():
    p = rgd.generate("randn", 100, 50, seed=1)
    certs = rgd.certify(p["A"], p["b"], p["x_star"], method="rgdr", theta=0.5)
    assert certs and all(c["satisfied"] for c in certs)
    with pytest.raises(ValueError):
        rgd.solve(p["A"], p["b"], p["x_star"], method="nope")
    with pytest.raises(rgd.SizeGuardError):
        rgd.certify(np.ones((1001, 1000)), np.ones(1001), np.ones(1000))
