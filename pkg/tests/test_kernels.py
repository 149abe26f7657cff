import os
import subprocess
import sys

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from frqme import _kernels


def random_complex(rng, dim, scale=1.0):
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


@pytest.mark.parametrize("dim", [1, 2, 3, 4, 9, 16, 36])
def test_expm_matches_scipy(dim):
    rng = np.random.default_rng(dim)
    a = random_complex(rng, dim)
    expected = scipy.linalg.expm(a)
    np.testing.assert_allclose(_kernels.expm(a), expected, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("scale", [1e-8, 1e-3, 1.0, 50.0, 200.0])
def test_expm_matches_scipy_across_norms(scale):
    # scaling-and-squaring must stay accurate from tiny to heavily squared inputs
    rng = np.random.default_rng(7)
    a = random_complex(rng, 5, scale)
    expected = scipy.linalg.expm(a)
    tolerance = 1e-12 * max(1.0, float(np.abs(expected).max()))
    np.testing.assert_allclose(_kernels.expm(a), expected, rtol=1e-11, atol=tolerance)


def test_expm_zero_matrix_is_identity():
    np.testing.assert_array_equal(
        _kernels.expm(np.zeros((3, 3), dtype=np.complex128)),
        np.eye(3, dtype=np.complex128),
    )


def test_expm_diagonal():
    d = np.diag(np.array([0.3 - 2.0j, -1.0 + 0.4j, 5.0]))
    np.testing.assert_allclose(
        _kernels.expm(d), np.diag(np.exp(np.diagonal(d))), rtol=1e-14, atol=1e-14
    )


def test_expm_accepts_non_contiguous_float_input():
    base = np.arange(32, dtype=np.float64).reshape(8, 4) / 40.0
    view = base[::2]
    np.testing.assert_allclose(
        _kernels.expm(view), scipy.linalg.expm(view.astype(np.complex128)),
        rtol=1e-13, atol=1e-13,
    )


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 2**31 - 1), dim=st.integers(1, 6))
def test_expm_inverse_property(seed, dim):
    rng = np.random.default_rng(seed)
    a = random_complex(rng, dim)
    product = _kernels.expm(a) @ _kernels.expm(-a)
    np.testing.assert_allclose(product, np.eye(dim), rtol=0, atol=1e-11)


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 2**31 - 1), dim=st.integers(1, 5))
def test_expm_doubling_property(seed, dim):
    rng = np.random.default_rng(seed)
    a = random_complex(rng, dim)
    np.testing.assert_allclose(
        _kernels.expm(2.0 * a), _kernels.expm(a) @ _kernels.expm(a),
        rtol=1e-10, atol=1e-10,
    )


def test_propagate_grid_matches_matrix_powers():
    rng = np.random.default_rng(11)
    step = random_complex(rng, 4, 0.5)
    v0 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    grid = _kernels.propagate_grid(step, v0, 6)
    assert grid.shape == (7, 4)
    for k in range(7):
        np.testing.assert_allclose(
            grid[k], np.linalg.matrix_power(step, k) @ v0, rtol=1e-12, atol=1e-12
        )


def test_propagate_grid_zero_steps_returns_initial_row():
    v0 = np.array([1.0, 2.0j, -3.0])
    grid = _kernels.propagate_grid(np.eye(3, dtype=np.complex128), v0, 0)
    assert grid.shape == (1, 3)
    np.testing.assert_array_equal(grid[0], v0.astype(np.complex128))


def test_evolve_coefficients_matches_direct_formula():
    rng = np.random.default_rng(3)
    a0 = random_complex(rng, 5)
    eigenvalues = np.sort(rng.standard_normal(5))
    tau_c, t = 0.7, 2.3
    gaps = eigenvalues[:, None] - eigenvalues[None, :]
    expected = a0 * np.exp((-1j * gaps - tau_c * gaps * gaps) * t)
    np.testing.assert_allclose(
        _kernels.evolve_coefficients(a0, eigenvalues, tau_c, t),
        expected, rtol=1e-14, atol=1e-14,
    )


def test_evolve_coefficients_diagonal_is_invariant():
    rng = np.random.default_rng(4)
    a0 = random_complex(rng, 6)
    eigenvalues = np.linspace(-2.0, 2.0, 6)
    out = _kernels.evolve_coefficients(a0, eigenvalues, 3.0, 100.0)
    np.testing.assert_allclose(np.diagonal(out), np.diagonal(a0), rtol=0, atol=1e-15)


NUMBA_MISSING = _kernels.IMPLEMENTATIONS["numba"] is None


@pytest.mark.skipif(NUMBA_MISSING, reason="numba backend not available")
class TestBackendParity:
    """The compiled and plain flavors must agree to roundoff."""

    def test_expm_parity(self):
        rng = np.random.default_rng(21)
        for dim in (2, 4, 9, 16):
            a = np.ascontiguousarray(random_complex(rng, dim, 3.0))
            np.testing.assert_allclose(
                _kernels.IMPLEMENTATIONS["numba"]["expm"](a),
                _kernels.IMPLEMENTATIONS["numpy"]["expm"](a),
                rtol=1e-13, atol=1e-13,
            )

    def test_propagate_grid_parity(self):
        rng = np.random.default_rng(22)
        step = np.ascontiguousarray(random_complex(rng, 9, 0.4))
        v0 = np.ascontiguousarray(rng.standard_normal(9) + 0j)
        np.testing.assert_allclose(
            _kernels.IMPLEMENTATIONS["numba"]["propagate_grid"](step, v0, 12),
            _kernels.IMPLEMENTATIONS["numpy"]["propagate_grid"](step, v0, 12),
            rtol=1e-13, atol=1e-13,
        )

    def test_evolve_coefficients_parity(self):
        rng = np.random.default_rng(23)
        a0 = np.ascontiguousarray(random_complex(rng, 6))
        eigenvalues = np.ascontiguousarray(np.sort(rng.standard_normal(6)))
        np.testing.assert_allclose(
            _kernels.IMPLEMENTATIONS["numba"]["evolve_coefficients"](a0, eigenvalues, 0.9, 4.0),
            _kernels.IMPLEMENTATIONS["numpy"]["evolve_coefficients"](a0, eigenvalues, 0.9, 4.0),
            rtol=1e-13, atol=1e-13,
        )


def _backend_in_subprocess(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("FRQME_BACKEND", None)
    else:
        env["FRQME_BACKEND"] = env_value
    return subprocess.run(
        [sys.executable, "-c", "import frqme; print(frqme.BACKEND)"],
        capture_output=True, text=True, env=env,
    )


def test_env_var_forces_plain_backend():
    proc = _backend_in_subprocess("numpy")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "numpy"


def test_env_var_rejects_unknown_backend():
    proc = _backend_in_subprocess("bogus")
    assert proc.returncode != 0
    assert "FRQME_BACKEND" in proc.stderr


def test_default_backend_is_valid():
    proc = _backend_in_subprocess(None)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() in ("numba", "numpy")
