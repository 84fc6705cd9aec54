"""Reproducing kernels and the orthonormal bases of PW^s_a."""
from dataclasses import dataclass
import math

import numpy as np

from .pwcore import (SQRT_2PI, FracPWFunction, SpectralDensity, corrected_exp,
                     synth_eval)
from .quadrature import build_grid


@dataclass(frozen=True)
class KernelPoint:
    w: complex
    z: complex
    value: complex


def _grid_for(params, grid):
    return grid if grid is not None else build_grid(params.a)


def kernel_density(params, z, grid=None):
    """Spectral density of K_z: (2pi)^(-1/2) E_m(-i conj(z) xi) |xi|^(-2s)."""
    params = params.require_hilbert()
    grid = _grid_for(params, grid)
    xi = grid.nodes
    vals = corrected_exp(-1j * np.conj(z) * xi, params.m) * np.abs(xi) ** (
        -2.0 * params.s) / SQRT_2PI
    return FracPWFunction(params, SpectralDensity(grid, vals))


def kernel_eval(params, w, z, grid=None):
    """K(w, z) = (1/2pi) int E_m(i w xi) E_m(-i conj(z) xi) |xi|^(-2s) dxi."""
    return synth_eval(kernel_density(params, z, grid), w)


def kernel_point(params, w, z, grid=None):
    return KernelPoint(complex(w), complex(z), kernel_eval(params, w, z, grid))


def kernel_matrix(params, points, grid=None):
    pts = np.asarray(points, dtype=np.complex128)
    return np.array([[kernel_eval(params, w, z, grid) for z in pts] for w in pts])


def basis_psi(params, n, grid=None):
    """n-th element of the orthonormal basis {psi(. - n pi/a)} of PW^s_a.

    Spectral density (2a)^(-1/2) exp(-i n pi xi / a) |xi|^(-s); the sign of
    the phase puts the element at n pi / a.
    """
    params = params.require_hilbert()
    grid = _grid_for(params, grid)
    xi = grid.nodes
    vals = np.exp(-1j * n * math.pi * xi / params.a) * np.abs(xi) ** (
        -params.s) / math.sqrt(2.0 * params.a)
    return FracPWFunction(params, SpectralDensity(grid, vals))


def basis_phi(a, n, grid=None):
    """Classical basis sqrt(a/pi) sinc(a(z - n pi/a)) of PW_a."""
    from .pwcore import make_params
    return basis_psi(make_params(a, 0.0), n, grid)


def psi_normalization_ratio(params):
    """Ratio of the literal prefactor 1/(2 sqrt(a pi)) to the one used here.

    The literal prefactor multiplies exp(i z xi) directly, i.e. equals
    (2pi)^(-1/2) times a spectral coefficient; ours is (2a)^(-1/2).
    """
    literal_spectral = SQRT_2PI / (2.0 * math.sqrt(params.a * math.pi))
    return literal_spectral * math.sqrt(2.0 * params.a)
