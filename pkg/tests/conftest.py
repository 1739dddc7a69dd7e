import math

import numpy as np
import pytest

from manoma import PathAngles, Position2D, UserChannelModel

WAVELENGTH = 0.1
HALF_PI = math.pi / 2.0


def random_angles(rng, count):
    return tuple(
        PathAngles(float(e), float(a))
        for e, a in zip(rng.uniform(-HALF_PI, HALF_PI, count), rng.uniform(-HALF_PI, HALF_PI, count))
    )


def random_model(rng, n_paths=10, wavelength=WAVELENGTH, gain_scale=1.0, diagonal=True):
    """Channel model with uniform angles and complex-Gaussian path coupling.

    Built directly in the tests (not via the scenario module) so channel and
    optimizer tests do not depend on the Monte Carlo machinery.
    """
    sd = math.sqrt(gain_scale / n_paths / 2.0)
    if diagonal:
        prm = np.diag(rng.normal(0.0, sd, n_paths) + 1j * rng.normal(0.0, sd, n_paths))
    else:
        prm = rng.normal(0.0, sd, (n_paths, n_paths)) + 1j * rng.normal(0.0, sd, (n_paths, n_paths))
    return UserChannelModel(
        tx_paths=random_angles(rng, n_paths),
        rx_paths=random_angles(rng, n_paths),
        prm=prm,
        carrier_wavelength=wavelength,
    )


def random_position(rng, half_side):
    x, y = rng.uniform(-half_side, half_side, 2)
    return Position2D(float(x), float(y))


@pytest.fixture
def rng():
    return np.random.default_rng(20240615)
