import math
from pathlib import Path

import pytest

from fdasim import ArrayGeometry, FocusSpec

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

REFERENCE_G = (1.8, 4.4, 4.4, 5.5, 4.8)
THETA0 = math.radians(-30.0)


def aligned_phases(g=REFERENCE_G, n_half=5):
    """Static phases that cancel the focus phase 2*pi*g_n per element."""
    return tuple(-2.0 * math.pi * (g[abs(n) - 1] if n != 0 else 0.0)
                 for n in range(-n_half, n_half + 1))


@pytest.fixture
def focus():
    return FocusSpec(theta0=THETA0, g=REFERENCE_G)


@pytest.fixture
def geom():
    """Reference array with the default all-zero static phases."""
    return ArrayGeometry(n_half=5, f0=3e9)


@pytest.fixture
def geom_aligned():
    """Reference array with phases that make the focus fully coherent (|AF| = 11)."""
    return ArrayGeometry(n_half=5, f0=3e9, phi=aligned_phases())
