import numpy as np
import pytest

from frqme import GeneratorSpec, SIGMA_Y, build_generator, matrix_exponential
from frqme import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger any one-time kernel compilation before tests are timed."""
    gen = build_generator(GeneratorSpec(drive=0.5 * SIGMA_Y, tau_c=1.0))
    matrix_exponential(gen, 0.1)
    _kernels.propagate_grid(np.eye(4, dtype=np.complex128), np.ones(4, dtype=np.complex128), 2)
    _kernels.evolve_coefficients(
        np.eye(2, dtype=np.complex128), np.array([0.0, 1.0]), 0.5, 0.3
    )
