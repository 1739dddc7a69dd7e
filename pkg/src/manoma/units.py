"""Decibel conversions used at the configuration surface.

All internal computation is in linear SI units; dBm/dB appear only when
parsing configuration and labeling output.
"""

import math


def dbm_to_watts(x_dbm: float) -> float:
    """Power in watts from dBm: 10^((x - 30)/10)."""
    if not math.isfinite(x_dbm):
        raise ValueError(f"dBm value must be finite, got {x_dbm}")
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


def db_to_linear(x_db: float) -> float:
    """Dimensionless ratio from dB: 10^(x/10)."""
    if not math.isfinite(x_db):
        raise ValueError(f"dB value must be finite, got {x_db}")
    return 10.0 ** (x_db / 10.0)
