"""Pure numpy fallback for the compiled inner loops in ``_core``."""
import numpy as np

BACKEND = "python"

_CHUNK = 1 << 21


def corrected_exp(u, m):
    """E_m(u) = exp(u) - sum_{j<=m} u**j / j!, cancellation-free near 0."""
    u = np.asarray(u, dtype=np.complex128)
    if m < 0:
        return np.exp(u)
    out = np.empty_like(u)
    small = np.abs(u) < 1.0
    big = ~small
    if big.any():
        ub = u[big]
        poly = np.ones_like(ub)
        term = np.ones_like(ub)
        for j in range(1, m + 1):
            term = term * ub / j
            poly = poly + term
        out[big] = np.exp(ub) - poly
    if small.any():
        us = u[small]
        term = np.ones_like(us)
        for j in range(1, m + 2):
            term = term * us / j
        total = term.copy()
        j = m + 1
        while j < 60:
            active = np.abs(term) > 1e-18 * np.abs(total)
            if not active.any():
                break
            j += 1
            term = np.where(active, term * us / j, 0)
            total = total + term
        out[small] = total
    return out


def exp_sum(z, nodes, coeffs, m):
    """out[j] = sum_k coeffs[k] * E_m(1j * z[j] * nodes[k])."""
    z = np.asarray(z, dtype=np.complex128)
    nodes = np.asarray(nodes, dtype=np.float64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    out = np.empty(z.size, dtype=np.complex128)
    rows = max(1, _CHUNK // max(nodes.size, 1))
    for start in range(0, z.size, rows):
        zc = z[start:start + rows]
        arg = 1j * np.outer(zc, nodes)
        out[start:start + rows] = corrected_exp(arg, m) @ coeffs
    return out


def sinc_sum(t, idx, values):
    """out[j] = sum_n values[n] * sinc(pi * (t[j] - idx[n])), exact on the lattice."""
    t = np.asarray(t, dtype=np.complex128)
    idx = np.asarray(idx, dtype=np.float64)
    values = np.asarray(values, dtype=np.complex128)
    out = np.empty(t.size, dtype=np.complex128)
    rows = max(1, _CHUNK // max(idx.size, 1))
    for start in range(0, t.size, rows):
        tc = t[start:start + rows]
        kr = np.floor(tc.real + 0.5)
        delta = tc - kr
        sd = np.sin(np.pi * delta)
        diff = kr[:, None] - idx[None, :]
        sign = np.where(np.abs(diff) % 2 == 0, 1.0, -1.0)
        arg = np.pi * (delta[:, None] + diff)
        small = np.abs(arg) < 1e-4
        safe = np.where(small, 1.0, arg)
        terms = np.where(small, 1 - arg ** 2 / 6 + arg ** 4 / 120,
                         sign * sd[:, None] / safe)
        out[start:start + rows] = terms @ values
    return out
