"""Windowed exponential frames on L^2[-a, a] and the frame-collapse experiment.

Sampling sequences of PW^s_a (0 < s < 1/2) correspond to frames
{|xi|^(-s) e^(-i lambda_n xi)} of L^2[-a, a]. An unbounded window admits no
upper frame bound; ``lai_experiment`` exhibits this as growth of the
Rayleigh quotient like h^(-2s) on bumps of width h centred at 0.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import backend
from .errors import InvalidArgument, NumericError
from .quadrature import PHASE_LIMIT, build_grid


@dataclass(frozen=True)
class WindowSpec:
    kind: str = "constant"
    exponent: float = 0.0

    def __post_init__(self):
        if self.kind not in ("constant", "power"):
            raise InvalidArgument(f"unknown window kind {self.kind!r}")
        if self.kind == "power" and not 0 <= self.exponent < 0.5:
            raise InvalidArgument("power window exponent must lie in [0, 1/2)")

    def __call__(self, xi):
        if self.kind == "constant":
            return np.ones_like(xi)
        return np.abs(xi) ** (-self.exponent)

    @classmethod
    def parse(cls, text):
        """'const' or 'pow:S'."""
        if text in ("const", "constant"):
            return cls()
        if text.startswith("pow:"):
            return cls("power", float(text[4:]))
        raise InvalidArgument(f"bad window spec {text!r}")

    def label(self):
        return "const" if self.kind == "constant" else f"pow:{self.exponent:g}"


@dataclass
class FrameReport:
    lambdas: list
    window: WindowSpec
    sigma_min_sq: float
    sigma_max_sq: float
    test_family: str
    blowup: list = field(default_factory=list)
    control: list = field(default_factory=list)
    context: dict = field(default_factory=dict)

    def as_dict(self):
        return {"lambdas": list(map(float, self.lambdas)),
                "window": self.window.label(),
                "sigma_min_sq": self.sigma_min_sq,
                "sigma_max_sq": self.sigma_max_sq,
                "test_family": self.test_family,
                "blowup": [list(r) for r in self.blowup],
                "control": [list(r) for r in self.control],
                "context": self.context}


def _check_lambdas(lambdas):
    lam = np.asarray(lambdas, dtype=np.float64).ravel()
    if np.unique(lam).size != lam.size:
        raise InvalidArgument("lambdas must be distinct")
    return lam


def weighted_gram(lambdas, grid, weight, window):
    """G_jk = sum_q w_q weight(xi_q) u_j(xi_q) conj(u_k(xi_q)), u_j = window e^{-i l_j xi}."""
    lam = _check_lambdas(lambdas)
    xi = grid.nodes
    wq = grid.weights * weight(xi)
    U = window(xi)[None, :] * np.exp(-1j * np.outer(lam, xi))
    G = (U * wq) @ U.conj().T
    # Hermitian by construction
    G = np.triu(G, 1) + np.triu(G, 1).conj().T + np.diag(G.diagonal().real)
    return G


def gram_matrix(window, lambdas, grid):
    """Gram of {window * e^{-i lambda xi}} in L^2[-a, a]."""
    return weighted_gram(lambdas, grid, np.ones_like, window)


def analysis_matrix(window, lambdas, grid):
    lam = _check_lambdas(lambdas)
    xi = grid.nodes
    return (np.sqrt(grid.weights) * window(xi))[None, :] * np.exp(-1j * np.outer(lam, xi))


def interior_subspace(grid, n_max, keep=0.95):
    """Orthonormal (in the grid inner product) Fourier modes |k| <= keep * n_max.

    Band-interior rule: modes in the outermost 5% of coefficient indices are
    excluded to suppress truncation edge effects.
    """
    kmax = int(math.floor(keep * n_max))
    k = np.arange(-kmax, kmax + 1)
    modes = np.exp(1j * np.outer(grid.nodes, k) * math.pi / grid.a)
    B = np.sqrt(grid.weights)[:, None] * modes
    q, _ = np.linalg.qr(B)
    return q, kmax


def frame_bounds(window, lambdas, grid, interior=True):
    """(sigma_min^2, sigma_max^2) of the analysis map on the discretised space.

    sigma_max^2 is taken over the full discretised space. sigma_min^2 is
    taken over the band-interior test subspace when ``interior`` is set
    (the full space has a kernel whenever there are fewer lambdas than
    nodes).
    """
    A = analysis_matrix(window, lambdas, grid)
    try:
        smax = np.linalg.svd(A, compute_uv=False)[0] ** 2
        if interior:
            lam = np.asarray(lambdas, dtype=float)
            n_max = int(round(np.max(np.abs(lam)) * grid.a / math.pi))
            Q, _ = interior_subspace(grid, n_max)
            smin = np.linalg.svd(A @ Q, compute_uv=False)[-1] ** 2
        else:
            sv = np.linalg.svd(A, compute_uv=False)
            smin = sv[-1] ** 2 if A.shape[0] >= A.shape[1] else 0.0
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed for {len(lambdas)} lambdas: {exc}") from exc
    return float(smin), float(smax)


def bump(xi, h):
    """cos^2(pi xi / (2h)) on |xi| < h, zero outside."""
    return np.where(np.abs(xi) < h, np.cos(math.pi * xi / (2 * h)) ** 2, 0.0)


def rayleigh_quotient(window, h, a, N, grid):
    """sum_{|n|<=N} |<f_h, window e_{lambda_n}>|^2 / ||f_h||^2, lambda_n = n pi / a."""
    xi = grid.nodes
    sel = np.abs(xi) < h
    fx = bump(xi[sel], h)
    wq = grid.weights[sel]
    norm2 = float(np.sum(wq * fx ** 2))
    lam = np.arange(-N, N + 1) * math.pi / a
    # <f, w e_lambda> = int f w e^{-i lambda xi}
    coeffs = backend.exp_sum(-lam, xi[sel], wq * fx * window(xi[sel]), -1)
    return float(np.sum(np.abs(coeffs) ** 2)) / norm2


def _panels_for_support(a, h, x_max, grading=3.0):
    """Panels resolving e^{i x xi}, |x| <= x_max, on the support |xi| < h."""
    th = (h / a) ** (1.0 / grading)
    panels = 64
    while a * (th ** grading - max(th - 1.0 / panels, 0.0) ** grading) > PHASE_LIMIT / x_max:
        panels *= 2
    return panels


def lai_experiment(s, a, N, hs, panels=None):
    """Rayleigh quotients of the window |xi|^(-s) on shrinking bumps.

    The constant window is run alongside as a control. The result is flagged
    "truncation-dominated" when N < 8 / h * a / pi for the smallest h.
    """
    if not 0 < s < 0.5:
        raise InvalidArgument("s must lie in (0, 1/2)")
    hs = [float(h) for h in hs]
    if any(not 0 < h <= a / 4 for h in hs):
        raise InvalidArgument("h values must lie in (0, a/4]")
    if any(h2 >= h1 for h1, h2 in zip(hs, hs[1:])):
        raise InvalidArgument("h list must be strictly decreasing")
    if panels is None:
        panels = _panels_for_support(a, max(hs), N * math.pi / a)
    grid = build_grid(a, panels)
    window = WindowSpec("power", s)
    control = WindowSpec()
    q = [rayleigh_quotient(window, h, a, N, grid) for h in hs]
    qc = [rayleigh_quotient(control, h, a, N, grid) for h in hs]
    need = 8.0 / min(hs) * a / math.pi
    ratios = [q2 / q1 for q1, q2 in zip(q, q[1:])]
    halvings = [h1 / h2 for h1, h2 in zip(hs, hs[1:])]
    expected = [r ** (2 * s) for r in halvings]
    tail = slice(-3, None)
    slope = float(np.polyfit(np.log(1.0 / np.array(hs[tail])), np.log(q[tail]), 1)[0])
    ctx = {"s": s, "a": a, "N": N, "panels": panels,
           "required_N": need,
           "status": "ok" if N >= need else "truncation-dominated",
           "growth_ratios": ratios, "expected_ratios": expected,
           "loglog_slope": slope, "expected_slope": 2 * s,
           "control_spread": (max(qc) - min(qc)) / max(qc)}
    return FrameReport(list(np.arange(-N, N + 1) * math.pi / a), window,
                       float("nan"), float(max(q)),
                       "cos^2 bumps of width h centred at 0",
                       list(zip(hs, q)), list(zip(hs, qc)), ctx)


def equivalence_check(s, lambdas, grid):
    """Compare the two Gram formulations of the frame-equivalence statement.

    (1) weight |xi|^(2s), vectors e^{-i l xi} |xi|^(-2s);
    (2) weight 1, vectors e^{-i l xi} |xi|^(-s).
    """
    from .verify import VerifyReport
    g1 = weighted_gram(lambdas, grid, lambda x: np.abs(x) ** (2 * s),
                       lambda x: np.abs(x) ** (-2 * s))
    g2 = weighted_gram(lambdas, grid, np.ones_like, lambda x: np.abs(x) ** (-s))
    diff = float(np.max(np.abs(g1 - g2)))
    return VerifyReport("frame-equivalence", diff, 1e-10,
                        {"s": s, "n_lambdas": len(lambdas), "grid": grid.spec()},
                        tol=0.0)
