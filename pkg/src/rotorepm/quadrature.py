"""Composite Simpson quadrature on segment-aligned grids.

Blade chord/twist profiles are piecewise-linear tables, so integrands are
piecewise polynomials with derivative kinks at the table stations.  Panels
are therefore aligned to the station breakpoints: inside each segment the
integrand is smooth and Simpson converges at full order, which keeps the
half-resolution convergence check meaningful.
"""

from __future__ import annotations

import numpy as np


class QuadratureError(Exception):
    """Raised when the quadrature fails its convergence check."""


def simpson_nodes(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Simpson with n (even) intervals on [a, b]."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"Simpson interval count must be even and >= 2, got {n}")
    x = np.linspace(a, b, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (b - a) / (3.0 * n)
    return x, w

def segmented_simpson_nodes(
    a: float, b: float, breakpoints, n_total: int = 1000
) -> tuple[np.ndarray, np.ndarray]:
    """Simpson nodes/weights on [a, b], with panels aligned to breakpoints.

    Interior breakpoints split [a, b] into segments; each segment gets an
    even number of intervals proportional to its length (at least 2), so
    roughly n_total intervals overall.  Shared segment endpoints appear
    twice in the node array with their per-segment weights, which sums
    correctly.
    """
    if not b > a:
        raise ValueError(f"empty integration domain [{a}, {b}]")
    eps = 1e-12 * (b - a)
    interior = sorted({float(r) for r in breakpoints if a + eps < r < b - eps})
    bounds = [a] + interior + [b]
    total = b - a
    xs, ws = [], []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        n_seg = max(2, 2 * round(n_total * (hi - lo) / (2.0 * total)))
        x, w = simpson_nodes(lo, hi, n_seg)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)
