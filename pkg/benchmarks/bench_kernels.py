#!/usr/bin/env python3
"""Time the compiled kernels against the portable numpy fallbacks.

Runs each hot kernel (matrix exponential, repeated grid propagation,
entrywise eigenbasis evolution) on generators of a few sizes and prints
per-call timings for both implementations.  Useful for checking whether
the compiled path is worth enabling on a given machine.

Usage: python3 benchmarks/bench_kernels.py
"""

import timeit

import numpy as np

from frqme import _kernels
from frqme.liouville import GeneratorSpec, build_generator, vectorize
from frqme.operators import pure_density

HILBERT_DIMS = (2, 4, 6)
GRID_STEPS = 200


def make_inputs(dim: int, rng: np.random.Generator):
    """Representative workload for one Hilbert-space dimension."""
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (h + h.conj().T)
    gen = build_generator(GeneratorSpec(drive=h, tau_c=1.0))
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    rho0 = pure_density(v / np.linalg.norm(v))
    eigenvalues = np.sort(rng.normal(size=dim))
    return {
        "expm": (gen * 0.05,),
        "propagate_grid": (_kernels.expm(gen * 0.05), vectorize(rho0), GRID_STEPS),
        "evolve_coefficients": (rho0, eigenvalues, 1.0, 3.0),
    }


def time_call(func, args) -> float:
    """Best-of-three per-call time in seconds."""
    timer = timeit.Timer(lambda: func(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=3, number=number)) / number


def fmt(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    return f"{seconds * 1e3:8.2f} ms"


def main() -> int:
    numba_impl = _kernels.IMPLEMENTATIONS["numba"]
    numpy_impl = _kernels.IMPLEMENTATIONS["numpy"]
    if numba_impl is None:
        print("numba is not importable; timing the numpy fallback only")

    rng = np.random.default_rng(7)
    header = f"{'kernel':<22}{'operand size':>14}{'numpy':>14}"
    if numba_impl is not None:
        header += f"{'numba':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for dim in HILBERT_DIMS:
        inputs = make_inputs(dim, rng)
        for name, args in inputs.items():
            size = args[0].shape[0]
            if numba_impl is not None:
                numba_impl[name](*args)  # trigger compilation outside the timer
            t_numpy = time_call(numpy_impl[name], args)
            line = f"{name:<22}{f'{size}x{size}':>14}{fmt(t_numpy):>14}"
            if numba_impl is not None:
                t_numba = time_call(numba_impl[name], args)
                line += f"{fmt(t_numba):>14}{t_numpy / t_numba:>9.1f}x"
            print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
