"""Composite Gauss-Legendre quadrature over segments and polylines.

tau is complex throughout the package, so fixed classical rules (Hermite,
Laguerre weights) do not apply; panels over explicitly truncated intervals
with analytic tail bounds are used instead.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureFailure


@lru_cache(maxsize=None)
def _gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    # map to [0, 1]
    return (x + 1.0) / 2.0, w / 2.0


def integrate_segment(f, a, b, n_panels: int = 8, n_nodes: int = 16):
    """Integrate vectorized f along the straight segment a->b (complex endpoints ok)."""
    x, w = _gl_nodes(n_nodes)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    ts = (edges[:-1, None] + np.diff(edges)[:, None] * x[None, :]).ravel()
    ws = (np.diff(edges)[:, None] * w[None, :]).ravel()
    pts = a + (b - a) * ts
    vals = f(pts)
    return (b - a) * np.sum(vals * ws, axis=-1)


def integrate_polyline(f, waypoints, n_panels: int = 8, n_nodes: int = 16):
    total = 0.0 + 0.0j
    for a, b in zip(waypoints[:-1], waypoints[1:]):
        total = total + integrate_segment(f, a, b, n_panels, n_nodes)
    return total


def integrate_segment_refined(f, a, b, tol: float = 1e-12, n_nodes: int = 16,
                              start_panels: int = 8, max_panels: int = 512):
    """Panel-doubling refinement; raises QuadratureFailure if tol is not met."""
    prev = integrate_segment(f, a, b, start_panels, n_nodes)
    n = start_panels
    while n <= max_panels:
        n *= 2
        cur = integrate_segment(f, a, b, n, n_nodes)
        scale = max(1.0, abs(np.asarray(cur)).max() if np.ndim(cur) else abs(cur))
        err = np.max(np.abs(np.asarray(cur) - np.asarray(prev)))
        if err <= tol * scale:
            return cur
        prev = cur
    raise QuadratureFailure(f"segment quadrature did not reach tol={tol}")


def gaussian_halfwidth(re_inv_scale: float, tol: float = 1e-16) -> float:
    """T with exp(-T^2 * re_inv_scale) < tol; re_inv_scale > 0."""
    if re_inv_scale <= 0:
        raise QuadratureFailure("nonpositive Gaussian decay rate")
    return float(np.sqrt(np.log(1.0 / tol) / re_inv_scale))


def fourier_gaussian_integral(g, tau, w_max: float, tol: float = 1e-16,
                              n_nodes: int = 16):
    """Integral over the real line of g(t) * exp(-t^2 tau / 4).

    g is vectorized and may oscillate like exp(i t w) with |w| <= w_max;
    panel count scales with |w|*T so the oscillation is resolved.
    """
    rate = (complex(tau) / 4.0).real
    T = gaussian_halfwidth(rate, tol)
    # >= 4 panels per oscillation wavelength, and at least 16 overall
    n_panels = max(16, int(2.0 * w_max * T / np.pi) + 8)

    def f(t):
        return g(t) * np.exp(-t * t * complex(tau) / 4.0)

    return integrate_segment(f, -T, T, n_panels, n_nodes)


def fourier_gaussian_halfline(g, tau, w_max: float, side: int, tol: float = 1e-16,
                              n_nodes: int = 16):
    """Same as fourier_gaussian_integral but over [0, inf) (side=+1) or (-inf, 0]."""
    rate = (complex(tau) / 4.0).real
    T = gaussian_halfwidth(rate, tol)
    n_panels = max(16, int(2.0 * w_max * T / np.pi) + 8)

    def f(t):
        return g(t) * np.exp(-t * t * complex(tau) / 4.0)

    if side > 0:
        return integrate_segment(f, 0.0, T, n_panels, n_nodes)
    return integrate_segment(f, -T, 0.0, n_panels, n_nodes)
