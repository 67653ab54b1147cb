"""Radial perturbation profiles and their expansion in the orthonormal basis.

A profile is a piecewise polynomial in the radius on a partition of [0, 1].
That class is closed under everything we need (presets, products, moments)
and lets every radial integral be evaluated either exactly from monomial
antiderivatives or by per-piece Gauss-Legendre rules of sufficient order, so
the two routes can be played against each other in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import jacobi
from .numerics import gauss_legendre

__all__ = [
    "MAX_PIECE_DEGREE",
    "JacobiExpansion",
    "RadialProfile",
    "moment_integral",
    "norm_ball",
    "norm_ball_profile",
    "preset",
    "profile_from_dict",
    "profile_to_dict",
    "project",
    "surface_area",
]

MAX_PIECE_DEGREE = 32

PRESET_NAMES = ("constant", "annulus", "polynomial", "ramp")


@dataclass(frozen=True)
class RadialProfile:
    """Piecewise polynomial on [0, 1].

    ``breakpoints`` is the partition (first 0, last 1, strictly increasing);
    ``pieces[i]`` holds the polynomial coefficients (constant term first) on
    [breakpoints[i], breakpoints[i+1]].
    """

    breakpoints: np.ndarray
    pieces: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        bp = np.array(self.breakpoints, dtype=float)
        if bp.ndim != 1 or bp.size < 2:
            raise ValueError("breakpoints must be a 1-d array with at least two entries")
        if bp[0] != 0.0 or bp[-1] != 1.0 or not np.all(np.diff(bp) > 0.0):
            raise ValueError("breakpoints must increase strictly from 0.0 to 1.0")
        pieces = tuple(np.array(p, dtype=float) for p in self.pieces)
        if len(pieces) != bp.size - 1:
            raise ValueError(
                f"{bp.size - 1} pieces needed for {bp.size} breakpoints, got {len(pieces)}"
            )
        for p in pieces:
            if p.ndim != 1 or p.size == 0:
                raise ValueError("each piece must be a non-empty 1-d coefficient array")
            if p.size - 1 > MAX_PIECE_DEGREE:
                raise ValueError(
                    f"piece degree {p.size - 1} exceeds the cap {MAX_PIECE_DEGREE}"
                )
            if not np.all(np.isfinite(p)):
                raise ValueError("piece coefficients must be finite")
            p.flags.writeable = False
        bp.flags.writeable = False
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "pieces", pieces)

    @property
    def max_piece_degree(self) -> int:
        return max(p.size - 1 for p in self.pieces)

    def intervals(self) -> Iterator[tuple[float, float, np.ndarray]]:
        """Yield (lo, hi, coefficients) for each piece."""
        for i, p in enumerate(self.pieces):
            yield float(self.breakpoints[i]), float(self.breakpoints[i + 1]), p

    def __call__(self, r):
        pts = np.atleast_1d(np.asarray(r, dtype=float))
        if pts.size and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ValueError("profile arguments must lie in [0, 1]")
        idx = np.clip(
            np.searchsorted(self.breakpoints, pts, side="right") - 1,
            0,
            len(self.pieces) - 1,
        )
        out = np.empty(pts.size)
        for i in range(len(self.pieces)):
            sel = idx == i
            if np.any(sel):
                out[sel] = npoly.polyval(pts[sel], self.pieces[i])
        if np.ndim(r) == 0:
            return float(out[0])
        return out


def preset(name: str, params: Sequence[float]) -> RadialProfile:
    """Build one of the stock profiles.

    constant:   [c]             -> c everywhere
    annulus:    [r1, r2, c]     -> c on [r1, r2], 0 elsewhere
    polynomial: [c0, c1, ...]   -> one global polynomial
    ramp:       [c]             -> c * r
    """
    params = [float(p) for p in params]
    if name == "constant":
        if len(params) != 1:
            raise ValueError("constant takes one parameter")
        return RadialProfile(np.array([0.0, 1.0]), (np.array([params[0]]),))
    if name == "ramp":
        if len(params) != 1:
            raise ValueError("ramp takes one parameter")
        return RadialProfile(np.array([0.0, 1.0]), (np.array([0.0, params[0]]),))
    if name == "polynomial":
        if not params:
            raise ValueError("polynomial needs at least one coefficient")
        return RadialProfile(np.array([0.0, 1.0]), (np.array(params),))
    if name == "annulus":
        if len(params) != 3:
            raise ValueError("annulus takes r1, r2, value")
        r1, r2, value = params
        if not 0.0 <= r1 < r2 <= 1.0:
            raise ValueError(f"annulus needs 0 <= r1 < r2 <= 1, got {r1}, {r2}")
        cuts = [0.0, r1, r2, 1.0]
        vals = [0.0, value, 0.0]
        keep = [i for i in range(3) if cuts[i] < cuts[i + 1]]
        return RadialProfile(
            np.array([cuts[i] for i in keep] + [1.0]),
            tuple(np.array([vals[i]]) for i in keep),
        )
    raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


def profile_from_dict(doc: dict) -> tuple[RadialProfile, int | None]:
    """Parse the on-disk profile document; returns the profile and its
    declared dimension (None when the document leaves it out)."""
    if not isinstance(doc, dict):
        raise ValueError("profile document must be a mapping")
    unknown = set(doc) - {"dimension", "breakpoints", "pieces"}
    if unknown:
        raise ValueError(f"unknown profile fields: {sorted(unknown)}")
    try:
        breakpoints = np.array(doc["breakpoints"], dtype=float)
        pieces = tuple(np.array(p, dtype=float) for p in doc["pieces"])
    except KeyError as exc:
        raise ValueError(f"profile document missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed profile document: {exc}") from None
    d = doc.get("dimension")
    if d is not None:
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"profile dimension must be an integer >= 2, got {d!r}")
    return RadialProfile(breakpoints, pieces), d


def profile_to_dict(profile: RadialProfile, d: int | None = None) -> dict:
    doc: dict = {
        "breakpoints": [float(b) for b in profile.breakpoints],
        "pieces": [[float(c) for c in p] for p in profile.pieces],
    }
    if d is not None:
        doc["dimension"] = int(d)
    return doc


def surface_area(d: int) -> float:
    """Surface measure of the unit sphere in R**d (2*pi, 4*pi, 2*pi**2, ...)."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def _piece_integral(coeffs: np.ndarray, lo: float, hi: float, power: int) -> float:
    # integral_lo^hi (sum_j c_j r**j) r**power dr, from exact antiderivatives;
    # stable because 0 <= lo < hi <= 1 makes every term's magnitude <= |c_j| / p.
    p = np.arange(coeffs.size, dtype=float) + power + 1.0
    return float(np.sum(coeffs * (hi**p - lo**p) / p))


def moment_integral(profile: RadialProfile, power: int) -> float:
    """integral_0^1 profile(r) r**power dr, exactly (per-piece antiderivatives)."""
    if not isinstance(power, (int, np.integer)) or power < 0:
        raise ValueError(f"power must be an integer >= 0, got {power!r}")
    return sum(_piece_integral(c, lo, hi, int(power)) for lo, hi, c in profile.intervals())


def norm_ball_profile(profile: RadialProfile, d: int) -> float:
    """L2 norm of the profile over the unit ball in R**d."""
    area = surface_area(d)
    total = 0.0
    for lo, hi, c in profile.intervals():
        total += _piece_integral(npoly.polymul(c, c), lo, hi, d - 1)
    # squaring can leave a tiny negative residue for the zero profile
    return math.sqrt(area * max(total, 0.0))


@dataclass(frozen=True)
class JacobiExpansion:
    """Basis coefficients of a radial profile: coeffs[k] multiplies P_k."""

    d: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d array")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def max_degree(self) -> int:
        return self.coeffs.size - 1

    def evaluate(self, r):
        """Partial sum sum_k coeffs[k] P_k(r)."""
        family = jacobi.build_family(self.d, self.max_degree)
        vals = self.coeffs @ jacobi.evaluate_table(family, r)
        if np.ndim(r) == 0:
            return float(vals[0])
        return vals


def project(profile: RadialProfile, d: int, max_degree: int) -> JacobiExpansion:
    """Coefficients <profile, P_k> for k = 0..max_degree.

    Each piece is integrated with a Gauss-Legendre rule whose order covers
    the full integrand degree (basis degree + piece degree + weight), so the
    only error is roundoff.
    """
    family = jacobi.build_family(d, max_degree)
    total = np.zeros(max_degree + 1)
    for lo, hi, c in profile.intervals():
        npts = (max_degree + (c.size - 1) + d) // 2 + 2
        rule = gauss_legendre(npts)
        r = lo + (hi - lo) * rule.nodes
        w = (hi - lo) * rule.weights
        table = jacobi.evaluate_table(family, r)
        total += table @ (w * npoly.polyval(r, c) * r ** (d - 1))
    return JacobiExpansion(d=d, coeffs=total)


def norm_ball(expansion: JacobiExpansion) -> float:
    """L2 norm over the ball implied by the coefficients (Parseval)."""
    return math.sqrt(surface_area(expansion.d) * float(expansion.coeffs @ expansion.coeffs))
