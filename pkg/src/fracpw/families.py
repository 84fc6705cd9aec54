"""Seeded random spectral densities used by tests and the verify harness.

Three families:

``rough``
    complex standard normal value at every node (norm-only checks).
``smooth``
    taper(xi) * sum_j c_j P_j(xi / a), Legendre series with complex normal
    coefficients and taper (1 - (xi/a)^2)_+^2. Real-line decay makes these
    usable for L^p norms.
``full-band``
    the Legendre series without the taper, so the spectrum reaches the band
    edges; used for growth-rate checks along the imaginary axis.
``laplacian-smooth``
    the ``smooth`` profile divided by |xi|^s, so that the spectrum of the
    fractional Laplacian (|xi|^s g) is smooth. Sampling of Delta^{s/2} f
    converges at the rate set by that spectrum.
"""
import numpy as np

from .pwcore import FracPWFunction, SpectralDensity
from .quadrature import build_grid

SMOOTH_DEGREE = 8
FAMILIES = ("rough", "smooth", "full-band", "laplacian-smooth")


def taper(xi, a):
    return np.clip(1.0 - (xi / a) ** 2, 0.0, None) ** 2


class SmoothProfile:
    """A random smooth density, evaluatable on any grid of the same band."""

    def __init__(self, a, coeffs, power=0.0, tapered=True):
        self.a = a
        self.coeffs = np.asarray(coeffs, dtype=np.complex128)
        self.power = power
        self.tapered = tapered

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=np.float64)
        val = np.polynomial.legendre.legval(xi / self.a, self.coeffs)
        if self.tapered:
            val = val * taper(xi, self.a)
        if self.power:
            val = val * np.abs(xi) ** (-self.power)
        return val


def smooth_profile(rng, a, s=0.0, laplacian=False, degree=SMOOTH_DEGREE,
                   tapered=True):
    c = rng.standard_normal(degree) + 1j * rng.standard_normal(degree)
    return SmoothProfile(a, c, s if laplacian else 0.0, tapered)


def random_function(params, rng, family="smooth", grid=None):
    grid = grid if grid is not None else build_grid(params.a)
    if family == "rough":
        n = grid.size
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    elif family in ("smooth", "laplacian-smooth", "full-band"):
        prof = smooth_profile(rng, params.a, params.s, family == "laplacian-smooth",
                              tapered=family != "full-band")
        vals = prof(grid.nodes)
    else:
        raise ValueError(f"unknown family {family!r}")
    return FracPWFunction(params, SpectralDensity(grid, vals))


def concentrated_function(params, rng, side=0, fraction=0.02, grid=None):
    """Random spectrum supported on |xi| >= (1 - fraction) a.

    ``side`` = +1 / -1 keeps only that end of the band; 0 keeps both.
    """
    grid = grid if grid is not None else build_grid(params.a)
    xi = grid.nodes
    keep = np.abs(xi) >= (1.0 - fraction) * params.a
    if side:
        keep &= np.sign(xi) == side
    n = grid.size
    vals = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * keep
    return FracPWFunction(params, SpectralDensity(grid, vals))


def conjugate_even(f):
    """Symmetrise g so that g(-xi) = conj(g(xi)) (real on the real line)."""
    v = f.values
    return f.with_values(0.5 * (v + np.conj(v[::-1])))
