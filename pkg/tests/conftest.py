import numpy as np
import pytest

from radialeit import RadialProfile, preset


def _build_corpus() -> list[tuple[str, RadialProfile]]:
    """Deterministic mix of constants, ramps, annuli, polynomials and
    random piecewise profiles; >= 20 entries."""
    rng = np.random.default_rng(20260815)
    out = [
        ("constant_1", preset("constant", [1.0])),
        ("constant_neg", preset("constant", [-2.5])),
        ("constant_tiny", preset("constant", [1e-3])),
        ("zero", preset("constant", [0.0])),
        ("ramp_1", preset("ramp", [1.0])),
        ("ramp_neg", preset("ramp", [-0.7])),
        ("annulus_outer", preset("annulus", [0.5, 1.0, 1.0])),
        ("annulus_mid", preset("annulus", [0.3, 0.8, -1.5])),
        ("annulus_thin", preset("annulus", [0.9, 0.95, 4.0])),
        ("annulus_core", preset("annulus", [0.0, 0.25, 2.0])),
        ("poly_parabola", preset("polynomial", [1.0, 0.0, -1.0])),
        ("poly_cubic", preset("polynomial", [0.2, -1.0, 0.0, 0.5])),
    ]
    for i in range(6):
        deg = int(rng.integers(1, 9))
        out.append((f"poly_rng{i}", preset("polynomial", rng.uniform(-1.0, 1.0, deg + 1))))
    for i in range(3):
        lo, hi = np.sort(rng.uniform(0.1, 0.9, 2))
        pieces = tuple(rng.uniform(-1.0, 1.0, int(rng.integers(1, 4))) for _ in range(3))
        out.append((f"piecewise_rng{i}", RadialProfile(np.array([0.0, lo, hi, 1.0]), pieces)))
    return out


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, RadialProfile]]:
    return _build_corpus()
