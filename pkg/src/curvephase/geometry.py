"""Closed-curve families, Frenet data and deformation velocity fields.

Curves are trigonometric polynomials in the loop coordinate s, linear in
the two deformation parameters (xi, zeta).  All s-derivatives are taken
analytically from the coefficients, never numerically, so curvature and
torsion are spectrally clean.

Sign conventions
----------------
Frenet frame: T = R'/|R'|, B = (R' x R'')/|R' x R''|, N = B x T, so that
kappa = |R' x R''|/|R'|^3 > 0 and the torsion follows B' = -tau N, i.e.

    tau = (R' x R'') . R''' / |R' x R''|^2 .

With this convention the built-in deformed circle has tau ~ +6 zeta sin(2s)
to first order, which is the sign the tangential operators downstream rely
on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateFrame, GridMismatch
from .spectral import SGrid, grid_points, spectral_derivative

# |R' x R''| below this is treated as an undefined Frenet frame.
FRAME_TOLERANCE = 1e-8


# ---------------------------------------------------------------------------
# trigonometric polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigPolynomial:
    """Finite sum a_n cos(n s) + b_n sin(n s) with integer harmonics."""

    harmonics: np.ndarray
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    @classmethod
    def from_terms(cls, terms) -> "TrigPolynomial":
        """Build from an iterable of (harmonic, cos_coeff, sin_coeff) triples."""
        merged: dict[int, list[float]] = {}
        for n, a, b in terms:
            n = int(n)
            if n < 0:
                raise ValueError(f"harmonic must be non-negative, got {n}")
            acc = merged.setdefault(n, [0.0, 0.0])
            acc[0] += float(a)
            acc[1] += float(b)
        keys = sorted(merged)
        return cls(
            harmonics=np.array(keys, dtype=int),
            cos_coeffs=np.array([merged[n][0] for n in keys]),
            sin_coeffs=np.array([merged[n][1] for n in keys]),
        )

    @classmethod
    def zero(cls) -> "TrigPolynomial":
        return cls.from_terms([])

    def terms(self) -> list[tuple[int, float, float]]:
        return [
            (int(n), float(a), float(b))
            for n, a, b in zip(self.harmonics, self.cos_coeffs, self.sin_coeffs)
        ]

    def evaluate(self, s, order: int = 0):
        """Value of the order-th s-derivative at s (scalar or array)."""
        s = np.asarray(s, dtype=float)
        out = np.zeros(s.shape)
        for n, a, b in zip(self.harmonics, self.cos_coeffs, self.sin_coeffs):
            out += _term_derivative(float(n), a, b, np.cos(n * s), np.sin(n * s), order)
        return out


def _term_derivative(n, a, b, cos_ns, sin_ns, order):
    # d/ds cycles (cos, sin) -> (-sin, cos) -> (-cos, -sin) -> (sin, -cos)
    scale = n ** order if (n > 0 or order == 0) else 0.0
    m = order % 4
    if m == 0:
        return scale * (a * cos_ns + b * sin_ns)
    if m == 1:
        return scale * (-a * sin_ns + b * cos_ns)
    if m == 2:
        return scale * (-a * cos_ns - b * sin_ns)
    return scale * (a * sin_ns - b * cos_ns)


def combine(weighted: list[tuple[TrigPolynomial, float]]) -> TrigPolynomial:
    """Weighted sum of trig polynomials."""
    terms = []
    for poly, w in weighted:
        terms.extend((n, w * a, w * b) for n, a, b in poly.terms())
    return TrigPolynomial.from_terms(terms)


@lru_cache(maxsize=None)
def _grid_trig(n_grid: int, harmonic: int) -> tuple[np.ndarray, np.ndarray]:
    s = grid_points(n_grid)
    c = np.cos(harmonic * s)
    v = np.sin(harmonic * s)
    c.setflags(write=False)
    v.setflags(write=False)
    return c, v


def _evaluate_on_grid(poly: TrigPolynomial, n_grid: int, order: int) -> np.ndarray:
    out = np.zeros(n_grid)
    for n, a, b in zip(poly.harmonics, poly.cos_coeffs, poly.sin_coeffs):
        cos_ns, sin_ns = _grid_trig(n_grid, int(n))
        out += _term_derivative(float(n), a, b, cos_ns, sin_ns, order)
    return out


# ---------------------------------------------------------------------------
# curve families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeformableCurve:
    """Two-parameter family of closed curves R(s; xi, zeta).

    Each Cartesian coordinate is base + xi * xi_term + zeta * zeta_term,
    every piece a trigonometric polynomial in s, hence 2*pi periodic for
    all parameter values.
    """

    base: tuple[TrigPolynomial, TrigPolynomial, TrigPolynomial]
    xi_term: tuple[TrigPolynomial, TrigPolynomial, TrigPolynomial]
    zeta_term: tuple[TrigPolynomial, TrigPolynomial, TrigPolynomial]
    name: str = "curve"

    def coordinate_polys(self, xi: float, zeta: float) -> list[TrigPolynomial]:
        return [
            combine([(self.base[i], 1.0), (self.xi_term[i], xi), (self.zeta_term[i], zeta)])
            for i in range(3)
        ]

    def position(self, xi: float, zeta: float, s, order: int = 0) -> np.ndarray:
        """R(s; xi, zeta) or its analytic s-derivative; shape s.shape + (3,)."""
        polys = self.coordinate_polys(xi, zeta)
        return np.stack([p.evaluate(s, order) for p in polys], axis=-1)

    def _derivatives_on_grid(self, xi, zeta, n_grid, orders) -> list[np.ndarray]:
        polys = self.coordinate_polys(xi, zeta)
        return [
            np.stack([_evaluate_on_grid(p, n_grid, order) for p in polys], axis=-1)
            for order in orders
        ]


def evaluate_curve(curve: DeformableCurve, xi: float, zeta: float, s) -> np.ndarray:
    """Point(s) on the curve at parameter values (xi, zeta)."""
    return curve.position(xi, zeta, s)


def deformed_circle() -> DeformableCurve:
    """Built-in family: unit circle with a planar cos^3/sin^3 squeeze (xi)
    and an out-of-plane cos(2s) buckle (zeta).

    cos^3 s = (3 cos s + cos 3s)/4 and sin^3 s = (3 sin s - sin 3s)/4, so
    the family is exactly a trigonometric polynomial.
    """
    t = TrigPolynomial.from_terms
    return DeformableCurve(
        base=(t([(1, 1.0, 0.0)]), t([(1, 0.0, 1.0)]), t([])),
        xi_term=(t([(1, -0.75, 0.0), (3, -0.25, 0.0)]),
                 t([(1, 0.0, 0.75), (3, 0.0, -0.25)]),
                 t([])),
        zeta_term=(t([]), t([]), t([(2, 1.0, 0.0)])),
        name="deformed-circle",
    )


def transformed(curve: DeformableCurve, rotation=None, translation=None) -> DeformableCurve:
    """Rigidly rotated/translated copy; acts linearly on the coefficients."""
    rot = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
    shift = np.zeros(3) if translation is None else np.asarray(translation, dtype=float)

    def rotate(triple):
        return tuple(
            combine([(triple[j], rot[i, j]) for j in range(3)]) for i in range(3)
        )

    base = rotate(curve.base)
    base = tuple(
        combine([(base[i], 1.0), (TrigPolynomial.from_terms([(0, shift[i], 0.0)]), 1.0)])
        for i in range(3)
    )
    return DeformableCurve(
        base=base,
        xi_term=rotate(curve.xi_term),
        zeta_term=rotate(curve.zeta_term),
        name=curve.name + "-transformed",
    )


def curve_to_dict(curve: DeformableCurve) -> dict:
    """Serializable description: (harmonic, cos, sin) triples per coordinate."""
    axes = "xyz"
    out = {"name": curve.name, "coordinates": {}}
    for i, axis in enumerate(axes):
        out["coordinates"][axis] = {
            "base": [list(t) for t in curve.base[i].terms()],
            "xi": [list(t) for t in curve.xi_term[i].terms()],
            "zeta": [list(t) for t in curve.zeta_term[i].terms()],
        }
    return out


def curve_from_dict(data: dict) -> DeformableCurve:
    coords = data.get("coordinates")
    if not isinstance(coords, dict):
        raise ValueError("curve description requires a 'coordinates' mapping")
    parts = {"base": [], "xi": [], "zeta": []}
    for axis in "xyz":
        spec = coords.get(axis, {})
        unknown = set(spec) - {"base", "xi", "zeta"}
        if unknown:
            raise ValueError(f"unknown keys in curve coordinate '{axis}': {sorted(unknown)}")
        for part in parts:
            parts[part].append(TrigPolynomial.from_terms(spec.get(part, [])))
    return DeformableCurve(
        base=tuple(parts["base"]),
        xi_term=tuple(parts["xi"]),
        zeta_term=tuple(parts["zeta"]),
        name=str(data.get("name", "curve")),
    )


# ---------------------------------------------------------------------------
# Frenet data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometryProfile:
    """Sampled curvature, torsion, torsion derivative and parametric speed."""

    s: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    tau_prime: np.ndarray
    speed: np.ndarray

    @property
    def n(self) -> int:
        return self.s.size


def frenet_profile(curve: DeformableCurve, xi: float, zeta: float, grid: SGrid) -> GeometryProfile:
    """Frenet data of the curve at (xi, zeta) on a uniform grid.

    kappa = |R' x R''| / |R'|^3 and tau = (R' x R'') . R''' / |R' x R''|^2
    with all derivatives analytic in s; tau' comes from spectral
    differentiation of the sampled tau.

    Raises
    ------
    DegenerateFrame
        If |R' x R''| falls below ``FRAME_TOLERANCE`` anywhere, e.g. at an
        inflection point or a cusp.
    """
    n = grid.n
    r1, r2, r3 = curve._derivatives_on_grid(xi, zeta, n, (1, 2, 3))
    cross = np.cross(r1, r2)
    cross_norm = np.linalg.norm(cross, axis=-1)
    if cross_norm.min() < FRAME_TOLERANCE:
        raise DegenerateFrame(
            f"|R' x R''| = {cross_norm.min():.3e} below {FRAME_TOLERANCE:.1e}; "
            "Frenet frame undefined"
        )
    speed = np.linalg.norm(r1, axis=-1)
    kappa = cross_norm / speed**3
    tau = np.einsum("ij,ij->i", cross, r3) / cross_norm**2
    profile = GeometryProfile(
        s=grid.points.copy(),
        kappa=kappa,
        tau=tau,
        tau_prime=spectral_derivative(tau),
        speed=speed,
    )
    for arr in (profile.s, profile.kappa, profile.tau, profile.tau_prime, profile.speed):
        arr.setflags(write=False)
    return profile


def frenet_frames(curve: DeformableCurve, xi: float, zeta: float, grid: SGrid):
    """Unit tangent, normal and binormal sampled on the grid, each (n, 3)."""
    r1, r2 = curve._derivatives_on_grid(xi, zeta, grid.n, (1, 2))
    cross = np.cross(r1, r2)
    cross_norm = np.linalg.norm(cross, axis=-1)
    if cross_norm.min() < FRAME_TOLERANCE:
        raise DegenerateFrame("Frenet frame undefined on this curve")
    tangent = r1 / np.linalg.norm(r1, axis=-1)[:, None]
    binormal = cross / cross_norm[:, None]
    normal = np.cross(binormal, tangent)
    return tangent, normal, binormal


def arclength_defect(curve: DeformableCurve, xi: float, zeta: float, n: int = 512) -> float:
    """max_s | |dR/ds| - 1 |, the error of using s as an arclength coordinate."""
    r1 = curve.position(xi, zeta, grid_points(n), order=1)
    return float(np.abs(np.linalg.norm(r1, axis=-1) - 1.0).max())


# ---------------------------------------------------------------------------
# deformation velocity fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeformationField:
    """Velocity field dR/d(parameter) at the base point, with its Frenet
    components: vectors = tangential T + normal N + binormal B."""

    vectors: np.ndarray
    tangential: np.ndarray
    normal: np.ndarray
    binormal: np.ndarray


def deformation_field(curve: DeformableCurve, direction: str, grid: SGrid) -> DeformationField:
    """Velocity field of one parameter direction at xi = zeta = 0."""
    if direction == "xi":
        term = curve.xi_term
    elif direction == "zeta":
        term = curve.zeta_term
    else:
        raise ValueError(f"direction must be 'xi' or 'zeta', got {direction!r}")
    vectors = np.stack(
        [_evaluate_on_grid(term[i], grid.n, 0) for i in range(3)], axis=-1
    )
    tangent, normal, binormal = frenet_frames(curve, 0.0, 0.0, grid)
    return DeformationField(
        vectors=vectors,
        tangential=np.einsum("ij,ij->i", vectors, tangent),
        normal=np.einsum("ij,ij->i", vectors, normal),
        binormal=np.einsum("ij,ij->i", vectors, binormal),
    )


def check_locally_arclength_preserving(field: DeformationField, profile: GeometryProfile) -> float:
    """max_s | d(v^t)/ds - kappa v^n |; zero for fields that preserve local
    arclength, which is what lets equal-s points be identified across
    parameter values."""
    if field.tangential.size != profile.n:
        raise GridMismatch(
            f"field has {field.tangential.size} samples, profile has {profile.n}"
        )
    residual = spectral_derivative(field.tangential) - profile.kappa * field.normal
    return float(np.abs(residual).max())
