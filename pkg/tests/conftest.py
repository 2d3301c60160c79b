import sys
from pathlib import Path

import numpy as np
import pytest

from doublejc.model import ModelParams, SubsystemParams

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_params(rng, identical=False):
    """g_B/g_A in [0.2, 5], Delta_k/g_k in [-2, 2], nu_k in [0.5, 2]."""
    g_a = rng.uniform(0.3, 2.0)
    g_b = g_a if identical else g_a * rng.uniform(0.2, 5.0)
    subs = []
    for g in (g_a, g_b):
        nu = rng.uniform(0.5, 2.0)
        subs.append(SubsystemParams(nu=nu, omega=nu + g * rng.uniform(-2.0, 2.0), g=g))
    return ModelParams(*subs)
