"""Uniform periodic grids and dense Fourier differentiation matrices.

All operators act on samples over s_i = 2*pi*i/N.  For even N the
first-derivative matrix uses the symmetric wavenumber set (Nyquist mode
mapped to zero), which keeps it a real antisymmetric matrix and makes the
momentum matrix change sign under complex conjugation.  The second
derivative keeps the exact Nyquist weight (N/2)^2 so that plane-wave
energies are reproduced for every resolvable mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class SGrid:
    """Uniform periodic grid on [0, 2*pi) with an even number of samples."""

    n: int

    def __post_init__(self):
        if self.n < 16 or self.n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 16, got {self.n}")

    @property
    def points(self) -> np.ndarray:
        return grid_points(self.n)

    @property
    def weight(self) -> float:
        """Quadrature weight of a single sample."""
        return 2.0 * np.pi / self.n


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def grid_points(n: int) -> np.ndarray:
    return _readonly(2.0 * np.pi * np.arange(n) / n)


@lru_cache(maxsize=None)
def wavenumbers(n: int) -> np.ndarray:
    """Integer wavenumbers in FFT layout: 0, 1, ..., n/2-1, -n/2, ..., -1."""
    return _readonly(np.fft.fftfreq(n, d=1.0 / n))


@lru_cache(maxsize=None)
def _dft_matrix(n: int) -> np.ndarray:
    k = wavenumbers(n)
    s = grid_points(n)
    return _readonly(np.exp(-1j * np.outer(k, s)) / np.sqrt(n))


@lru_cache(maxsize=None)
def momentum_matrix(n: int) -> np.ndarray:
    """Hermitian matrix of -i d/ds; Nyquist mode carries zero momentum."""
    k = wavenumbers(n).copy()
    k[n // 2] = 0.0
    f = _dft_matrix(n)
    p = f.conj().T @ (k[:, None] * f)
    return _readonly(0.5 * (p + p.conj().T))


@lru_cache(maxsize=None)
def derivative_matrix(n: int) -> np.ndarray:
    """Real antisymmetric matrix of d/ds (equals i times the momentum matrix)."""
    d = (1j * momentum_matrix(n)).real
    return _readonly(0.5 * (d - d.T))


@lru_cache(maxsize=None)
def kinetic_matrix(n: int) -> np.ndarray:
    """Real symmetric matrix of -d^2/ds^2, exact for all n resolvable modes."""
    k = wavenumbers(n)
    f = _dft_matrix(n)
    m = f.conj().T @ ((k * k)[:, None] * f)
    return _readonly(0.5 * (m + m.conj().T).real)


def spectral_derivative(values: np.ndarray) -> np.ndarray:
    """First derivative of periodic samples via the FFT.

    Exact for band-limited data; the Nyquist mode is dropped, consistent
    with :func:`derivative_matrix`.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    k = wavenumbers(n).copy()
    k[n // 2] = 0.0
    out = np.fft.ifft(1j * k * np.fft.fft(values))
    if np.isrealobj(values):
        return out.real
    return out
