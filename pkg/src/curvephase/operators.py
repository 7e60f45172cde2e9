"""Effective tangential Hamiltonian on the periodic s-grid.

For a fixed angular-momentum sector sigma = +-1 of the first excited
normal doublet, the tangential operator is

    H = (P - sigma * tau)^2 / 2 - kappa^2 / 8

with P the spectral momentum matrix and tau, kappa diagonal sample
matrices.  The covariant square is expanded as

    H = K2/2 - (sigma/2) (P tau + tau P) + tau^2/2 - kappa^2/8

where K2 is the exact spectral -d^2/ds^2 (Nyquist mode included at its
true energy).  Every term is Hermitian entry-by-entry in floating point,
and complex conjugation maps the sector sigma to -sigma exactly, so the
two sectors share a spectrum for any profile.

Units: hbar = m = 1, circle radius = 1.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .eigh import hermitian_eigensystem, phase_fixed
from .errors import GapCollapse, GridMismatch
from .geometry import DeformableCurve, GeometryProfile, frenet_profile
from .spectral import SGrid, kinetic_matrix, momentum_matrix

# Minimum gap to the first excited tangential state; the undeformed circle
# has gap 1/2, so falling below half of that signals a deformation outside
# the perturbative/adiabatic regime.
MIN_GAP = 0.25


@dataclass(frozen=True)
class TangentialHamiltonian:
    """Dense Hermitian discretization of the tangential operator."""

    matrix: np.ndarray
    sigma: int
    grid: SGrid
    profile_fingerprint: str


@dataclass(frozen=True)
class EigenPair:
    """Energy and grid-sampled eigenfunction, unit norm under
    sum |psi_i|^2 * (2*pi/N) = 1."""

    value: float
    vector: np.ndarray


@dataclass(frozen=True)
class SpectrumSlice:
    """Lowest part of the spectrum at one parameter point."""

    xi: float
    zeta: float
    sigma: int
    pairs: tuple[EigenPair, ...]
    gap: float

    @property
    def energies(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs])


def profile_fingerprint(profile: GeometryProfile) -> str:
    h = hashlib.sha256()
    h.update(np.int64(profile.n).tobytes())
    h.update(np.ascontiguousarray(profile.kappa).tobytes())
    h.update(np.ascontiguousarray(profile.tau).tobytes())
    return h.hexdigest()[:16]


def build_hamiltonian(profile: GeometryProfile, sigma: int, grid: SGrid) -> TangentialHamiltonian:
    """Assemble the sector Hamiltonian for a sampled geometry.

    Raises GridMismatch if the profile was sampled on a different grid.
    """
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if profile.n != grid.n:
        raise GridMismatch(f"profile has {profile.n} samples, grid has {grid.n}")
    tau = profile.tau
    kappa = profile.kappa
    p = momentum_matrix(grid.n)
    cross = p * tau[None, :] + tau[:, None] * p  # P tau + tau P, exactly Hermitian
    h = 0.5 * kinetic_matrix(grid.n).astype(complex)
    h -= 0.5 * sigma * cross
    h[np.diag_indices(grid.n)] += 0.5 * tau**2 - 0.125 * kappa**2
    h.setflags(write=False)
    return TangentialHamiltonian(
        matrix=h, sigma=sigma, grid=grid, profile_fingerprint=profile_fingerprint(profile)
    )


def expanded_hamiltonian_matrix(profile: GeometryProfile, sigma: int, grid: SGrid) -> np.ndarray:
    """Literal term-by-term matrix of the expanded tangential equation

        -psi''/2 + i sigma tau psi' + (i sigma tau' + tau^2 - kappa^2/4) psi / 2.

    Agrees with :func:`build_hamiltonian` when applied to smooth states;
    kept for cross-checks only since it is not exactly Hermitian at
    finite N.
    """
    from .spectral import derivative_matrix

    n = grid.n
    d = derivative_matrix(n)
    h = 0.5 * kinetic_matrix(n).astype(complex)
    h += 1j * sigma * profile.tau[:, None] * d
    h[np.diag_indices(n)] += 0.5 * (
        1j * sigma * profile.tau_prime + profile.tau**2 - 0.25 * profile.kappa**2
    )
    return h


def eigensolve(hamiltonian: TangentialHamiltonian, count: int) -> list[EigenPair]:
    """The ``count`` lowest eigenpairs, ascending, deterministically ordered.

    Eigenvectors are orthonormal in the grid quadrature norm and
    phase-fixed so the largest-magnitude sample is real and positive.
    """
    n = hamiltonian.grid.n
    if not 1 <= count <= n:
        raise ValueError(f"count must be in [1, {n}], got {count}")
    values, vectors = hermitian_eigensystem(hamiltonian.matrix)
    scale = np.sqrt(n / (2.0 * np.pi))
    return [
        EigenPair(value=float(values[j]), vector=phase_fixed(vectors[:, j] * scale))
        for j in range(count)
    ]


def ground_state_and_gap(hamiltonian: TangentialHamiltonian) -> tuple[EigenPair, float]:
    pairs = eigensolve(hamiltonian, 2)
    return pairs[0], pairs[1].value - pairs[0].value


def ground_state_k0(hamiltonian: TangentialHamiltonian, min_gap: float = MIN_GAP) -> EigenPair:
    """Unique lowest eigenpair, guarded by a spectral-gap check.

    Raises GapCollapse when the gap to the first excited state falls below
    ``min_gap``: the deformation is too large for the k = 0 ground state
    to be tracked perturbatively/adiabatically.
    """
    ground, gap = ground_state_and_gap(hamiltonian)
    if gap < min_gap:
        raise GapCollapse(f"spectral gap {gap:.4f} below {min_gap}")
    return ground


def spectrum_slice(
    curve: DeformableCurve,
    xi: float,
    zeta: float,
    sigma: int,
    grid: SGrid,
    count: int = 5,
) -> SpectrumSlice:
    """Convenience: profile -> Hamiltonian -> lowest eigenpairs."""
    profile = frenet_profile(curve, xi, zeta, grid)
    h = build_hamiltonian(profile, sigma, grid)
    pairs = eigensolve(h, max(count, 2))
    return SpectrumSlice(
        xi=xi,
        zeta=zeta,
        sigma=sigma,
        pairs=tuple(pairs[:count]),
        gap=pairs[1].value - pairs[0].value,
    )
