"""Spectral model of fractional Paley-Wiener / Bernstein space members.

A member f is stored as its spectral density g sampled on a graded grid.
Every operator acts as a diagonal multiplier on g or as a quadrature
against g:

    f(z) = (2 pi)^(-1/2) * sum_k w_k g_k E_m(i z xi_k),

where E_m(u) = exp(u) - sum_{j<=m} u**j / j! and m = floor(s - 1/p)
(m = -1, i.e. no correction, when s < 1/p).
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

from . import backend
from .errors import (CriticalExponentError, GridMismatchError, InvalidArgument,
                     ShiftRangeError)
from .quadrature import build_grid, weighted_inner, weighted_norm

SQRT_2PI = math.sqrt(2.0 * math.pi)
CRITICAL_TOL = 1e-12


def _is_critical(x):
    return x > -CRITICAL_TOL and abs(x - round(x)) < CRITICAL_TOL


@dataclass(frozen=True)
class FracParams:
    a: float
    s: float
    p: float = 2.0
    m: int = field(init=False)

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0):
            raise InvalidArgument(f"bandwidth must be positive, got a={self.a!r}")
        if not (np.isfinite(self.s) and self.s >= 0):
            raise InvalidArgument(f"order must be >= 0, got s={self.s!r}")
        if not (1 < self.p < np.inf):
            raise InvalidArgument(f"exponent must lie in (1, inf), got p={self.p!r}")
        d = self.s - 1.0 / self.p
        if self.s > 0 and _is_critical(d):
            raise CriticalExponentError(
                f"s - 1/p = {d:.12g} is a nonnegative integer; the critical "
                "case is excluded (the theory is open there)")
        m = math.floor(d) if d > 0 else -1
        object.__setattr__(self, "m", int(m))

    @property
    def hilbert_m(self):
        """Taylor order for the p = 2 (Paley-Wiener) structure."""
        d = self.s - 0.5
        return int(math.floor(d)) if d > 0 else -1

    def require_hilbert(self):
        """Return the p = 2 version of these params, checking s - 1/2."""
        if self.p == 2:
            return self
        return make_params(self.a, self.s, 2.0)

    def as_dict(self):
        return {"a": self.a, "s": self.s, "p": self.p}


def make_params(a, s, p=2.0):
    return FracParams(float(a), float(s), float(p))


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    grid: object
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.size,):
            raise InvalidArgument(
                f"expected {self.grid.size} values, got shape {vals.shape}")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __add__(self, other):
        if not self.grid.same_as(other.grid):
            raise GridMismatchError("densities live on different grids")
        return SpectralDensity(self.grid, self.values + other.values)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        return SpectralDensity(self.grid, c * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class FracPWFunction:
    params: FracParams
    g: SpectralDensity

    def __post_init__(self):
        if self.g.grid.a != self.params.a:
            raise InvalidArgument(
                f"grid bandwidth {self.g.grid.a} != params.a {self.params.a}")

    @property
    def grid(self):
        return self.g.grid

    @property
    def values(self):
        return self.g.values

    def with_values(self, values, params=None):
        return FracPWFunction(params or self.params,
                              SpectralDensity(self.grid, values))

    def __add__(self, other):
        return FracPWFunction(self.params, self.g + other.g)

    def __sub__(self, other):
        return FracPWFunction(self.params, self.g - other.g)

    def __mul__(self, c):
        return FracPWFunction(self.params, c * self.g)

    __rmul__ = __mul__

    def __call__(self, z):
        return synth_eval(self, z)


def from_function(params, func, grid=None):
    """Sample a density callable ``func(xi)`` on ``grid`` (default grid for a)."""
    grid = grid if grid is not None else build_grid(params.a)
    return FracPWFunction(params, SpectralDensity(grid, func(grid.nodes)))


def corrected_exp(u, m):
    """exp(u) - P_m(u), evaluated without cancellation for |u| < 1."""
    return backend.corrected_exp(u, m)


def synth_eval(f, z):
    """Evaluate f at complex point(s) z.

    Scalar z returns a complex; array input returns an array of the same
    shape.
    """
    zz = np.asarray(z, dtype=np.complex128)
    grid = f.grid
    coeffs = grid.weights * f.values / SQRT_2PI
    out = backend.exp_sum(zz.ravel(), grid.nodes, coeffs, f.params.m)
    if zz.ndim == 0:
        return complex(out[0])
    return out.reshape(zz.shape)


def _with_order(params, s):
    if s < 0 and s > -CRITICAL_TOL:
        s = 0.0
    return make_params(params.a, s, params.p)


def frac_laplacian(f, t, target=None):
    """Apply the multiplier |xi|**t (t < 0 is the Riesz potential of order -t).

    The result is labelled with order s - t unless ``target`` is given.
    With t = s this is the isometry onto the classical (s = 0) model.
    """
    params = target if target is not None else _with_order(f.params, f.params.s - t)
    return f.with_values(np.abs(f.grid.nodes) ** t * f.values, params)


def inverse_laplacian(h, target):
    """Inverse of the fractional Laplacian on classical (s = 0) data."""
    if h.params.s != 0:
        raise InvalidArgument("inverse_laplacian expects classical (s=0) data")
    if target.a != h.params.a:
        raise InvalidArgument("target bandwidth differs from h")
    return h.with_values(np.abs(h.grid.nodes) ** (-target.s) * h.values, target)


def derivative(f, n):
    """n-th derivative as the multiplier (i xi)**n, Taylor part re-centred."""
    if n < 0:
        raise InvalidArgument("derivative order must be >= 0")
    return f.with_values((1j * f.grid.nodes) ** n * f.values)


def shift_imaginary(f, y):
    """Spectral density of w -> f(w + iy) minus its Taylor polynomial of order m."""
    if abs(y) * f.params.a > 700:
        raise ShiftRangeError(f"|y| * a = {abs(y) * f.params.a:g} overflows exp")
    return f.with_values(np.exp(-y * f.grid.nodes) * f.values)


def pw_norm(f):
    """Norm of f in PW^s_a: the weighted L^2 norm of g."""
    return weighted_norm(f.g, f.params.s)


def pw_inner(f, h):
    return weighted_inner(f.g, h.g, f.params.s)


def band_mask(f, a):
    """Orthogonal projection onto |xi| <= a on f's own grid."""
    keep = np.abs(f.grid.nodes) <= a
    return f.with_values(np.where(keep, f.values, 0))


def _local_cubic(x_src, y_src, x_dst):
    """4-point Lagrange interpolation on a sorted, nonuniform abscissa."""
    n = x_src.size
    if n == 0:
        return np.zeros(x_dst.shape, dtype=np.complex128)
    if n < 4:
        return np.interp(x_dst, x_src, y_src.real) + 1j * np.interp(
            x_dst, x_src, y_src.imag)
    i = np.clip(np.searchsorted(x_src, x_dst) - 2, 0, n - 4)
    xs = x_src[i[:, None] + np.arange(4)]
    ys = y_src[i[:, None] + np.arange(4)]
    out = np.zeros(x_dst.shape, dtype=np.complex128)
    for j in range(4):
        basis = np.ones(x_dst.shape)
        for k in range(4):
            if k != j:
                basis *= (x_dst - xs[:, k]) / (xs[:, j] - xs[:, k])
        out += basis * ys[:, j]
    return out


def project(gwide, target, grid=None):
    """Orthogonal projection of a wide-band density onto PW^s_a.

    ``gwide`` is a SpectralDensity (or FracPWFunction) on [-b, b] with
    b >= target.a. Values at |xi| <= a are kept and resampled onto the
    target grid by local cubic interpolation; each half-line is
    interpolated separately so the stencil never crosses xi = 0.
    """
    if isinstance(gwide, FracPWFunction):
        gwide = gwide.g
    wgrid = gwide.grid
    a = target.a
    if wgrid.a < a:
        raise InvalidArgument(f"source band {wgrid.a} narrower than target {a}")
    if grid is None:
        grid = wgrid if wgrid.a == a else build_grid(
            a, wgrid.panels, wgrid.grading, wgrid.inner_levels)
    if grid.a != a:
        raise InvalidArgument("target grid bandwidth differs from target.a")
    if grid.same_as(wgrid):
        vals = np.where(np.abs(wgrid.nodes) <= a, gwide.values, 0)
        return FracPWFunction(target, SpectralDensity(grid, vals))
    src_x, src_y = wgrid.nodes, gwide.values
    out = np.zeros(grid.size, dtype=np.complex128)
    for sign in (-1.0, 1.0):
        sel = (sign * src_x > 0) & (np.abs(src_x) <= a)
        dst = sign * grid.nodes > 0
        xs, ys = src_x[sel], src_y[sel]
        out[dst] = _local_cubic(xs, ys, grid.nodes[dst])
    return FracPWFunction(target, SpectralDensity(grid, out))


# ---------------------------------------------------------------- L^p norms

@dataclass(frozen=True)
class EspNorm:
    """Result of a real-line E^{s,p} norm evaluation."""
    value: float
    p: float
    R: float
    step: float
    converged: bool
    resolved: bool
    history: tuple
    spectral: float | None = None
    spectral_agrees: bool | None = None
    resolution_limited: bool = False

    def as_dict(self):
        return {"value": self.value, "p": self.p, "R": self.R, "step": self.step,
                "converged": self.converged, "resolved": self.resolved,
                "history": [list(h) for h in self.history],
                "spectral": self.spectral, "spectral_agrees": self.spectral_agrees,
                "resolution_limited": self.resolution_limited}


def laplacian_on_line(f, x):
    """Values of the fractional Laplacian of f at real points x."""
    grid = f.grid
    coeffs = grid.weights * np.abs(grid.nodes) ** f.params.s * f.values / SQRT_2PI
    return backend.exp_sum(np.asarray(x, dtype=np.float64), grid.nodes, coeffs, -1)


def esp_norm_info(f, p=None, R=None, tol=1e-3, max_doublings=10):
    """Real-line L^p norm of the fractional Laplacian of f, with diagnostics.

    The trapezoid rule with step pi/(4a) is applied on [-R, R]; R doubles
    until the relative change drops below ``tol``, R exceeds
    2**max_doublings times its initial value, or the next R would leave the
    range the grid resolves (beyond it the discrete model no longer decays
    and the integral grows without bound). The last two outcomes are
    reported as ``converged=False``. For p = 2 the exact spectral value is
    also recorded.
    """
    p = f.params.p if p is None else float(p)
    if not 1 < p < np.inf:
        raise InvalidArgument(f"p must lie in (1, inf), got {p!r}")
    a = f.params.a
    R0 = 16.0 * math.pi / a if R is None else float(R)
    if R0 <= 0:
        raise InvalidArgument("R must be positive")
    h = math.pi / (4.0 * a)
    spectral = pw_norm(f) if p == 2 else None
    if not np.any(f.values):
        return EspNorm(0.0, p, R0, h, True, True, ((R0, 0.0),), spectral,
                       True if p == 2 else None)

    def shell(k_lo, k_hi):
        k = np.arange(k_lo, k_hi)
        x = np.concatenate([-k[::-1] * h, k * h]) if k_lo > 0 else np.concatenate(
            [-k[:0:-1] * h, k * h])
        return np.sum(np.abs(laplacian_on_line(f, x)) ** p)

    K = int(math.ceil(R0 / h))
    total = shell(0, K)
    edge = np.abs(laplacian_on_line(f, np.array([-K * h, K * h]))) ** p
    value = (h * (total + 0.5 * edge.sum())) ** (1.0 / p)
    history = [(K * h, value)]
    converged = False
    limited = False
    for _ in range(max_doublings):
        if 2 * K * h > f.grid.resolved_range:
            limited = True
            break
        total += edge.sum() + shell(K + 1, 2 * K)
        K *= 2
        edge = np.abs(laplacian_on_line(f, np.array([-K * h, K * h]))) ** p
        new = (h * (total + 0.5 * edge.sum())) ** (1.0 / p)
        history.append((K * h, new))
        change = abs(new - value) / max(abs(new), 1e-300)
        value = new
        if change < tol:
            converged = True
            break
    R_final = K * h
    agrees = None
    if spectral is not None:
        agrees = bool(abs(value - spectral) <= 5 * tol * spectral)
    return EspNorm(float(value), p, R_final, h, converged,
                   bool(R_final <= f.grid.resolved_range), tuple(history),
                   spectral, agrees, limited)


def esp_norm(f, p=None, R=None, tol=1e-3):
    """Approximate ||Delta^{s/2} f||_{L^p(R)} (see :func:`esp_norm_info`)."""
    return esp_norm_info(f, p, R, tol).value


def lp_norm_at(f, p, R):
    """L^p norm of the fractional Laplacian on [-R, R] with the standard step."""
    a = f.params.a
    h = math.pi / (4.0 * a)
    K = int(math.ceil(R / h))
    x = np.arange(-K, K + 1) * h
    vals = np.abs(laplacian_on_line(f, x)) ** p
    return float((h * (vals.sum() - 0.5 * (vals[0] + vals[-1]))) ** (1.0 / p))
