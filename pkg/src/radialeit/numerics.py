"""Quadrature rules and log-domain special functions shared across the package.

Everything downstream (basis projection, eigenvalue formulas, decay bounds)
leans on two things: Gauss-Legendre rules rescaled to (0, 1) and stable
log-gamma ratios.  The factorial ratios that appear in the eigenvalue series
overflow float64 well before the degrees of interest, so they are only ever
handled in log space here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "log_gamma",
    "log_factorial_ratio",
]


@dataclass(frozen=True)
class QuadratureRule:
    """An n-point rule for integrals over the open interval (0, 1)."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ValueError("nodes and weights must be matching 1-d arrays")
        if not (nodes[0] > 0.0 and nodes[-1] < 1.0 and np.all(np.diff(nodes) > 0.0)):
            raise ValueError("nodes must be strictly increasing and lie inside (0, 1)")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def order(self) -> int:
        return self.nodes.size

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Apply the rule to a vectorised integrand."""
        return float(self.weights @ np.asarray(f(self.nodes), dtype=float))


def gauss_legendre(n: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``n`` points, mapped from (-1, 1) to (0, 1).

    Exact for polynomials of degree <= 2n - 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"need a positive integer point count, got {n!r}")
    x, w = np.polynomial.legendre.leggauss(int(n))
    return QuadratureRule(0.5 * (x + 1.0), 0.5 * w)


def log_gamma(z: float) -> float:
    """log Gamma(z) for z > 0."""
    z = float(z)
    if not math.isfinite(z) or z <= 0.0:
        raise ValueError(f"log_gamma requires a finite z > 0, got {z!r}")
    return math.lgamma(z)


def log_factorial_ratio(ell: int, k: int, d: int) -> float:
    """Log of (2l-2+d)! (2l-2)! / ((2l-2+d+k)! (2l-2-k)!).

    This ratio multiplies the k-th basis coefficient in the eigenvalue series
    for eigenvalue index ``ell``; it is <= 1 and decays super-exponentially in
    k, so only its log is ever exposed.  The two lgamma differences below each
    pair arguments that coincide at k = 0, which keeps the result exactly 0.0
    there and keeps the sign of the log reliable near 0 (a naive four-term sum
    can come out at +2e-13 for large ell).
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if ell < 1:
        raise ValueError(f"eigenvalue index must be >= 1, got {ell}")
    if not 0 <= k <= 2 * ell - 2:
        raise ValueError(f"need 0 <= k <= 2*ell - 2, got k={k}, ell={ell}")
    n = 2 * ell - 2
    return (math.lgamma(n + d + 1) - math.lgamma(n + d + k + 1)) + (
        math.lgamma(n + 1) - math.lgamma(n - k + 1)
    )
