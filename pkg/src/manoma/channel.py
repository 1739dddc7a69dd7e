"""Far-field response channel between a fixed transmit array and a movable receive antenna.

Moving the receive antenna inside its region changes only the per-path phase
at the receiver; departure/arrival angles and path amplitudes stay fixed.
The complex channel coefficient is

    h(r) = f(r)^T . S . G . 1

where f(r) is the receive field-response vector, S couples transmit paths to
receive paths, G stacks the transmit field-response vectors of all array
elements column-wise, and 1 sums over elements (equal per-antenna feeds).

Because S.G.1 is a fixed vector v once the array and paths are known,
|h(r)|^2 expands into a constant plus pairwise cosine terms of the receive
phase differences (the rank-1 coupling matrix v.v^H drives the expansion);
``expansion_terms`` precomputes those coefficients for the numeric kernels.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .geometry import AntennaArray, PathAngles, Position2D


@dataclass
class UserChannelModel:
    """Multipath geometry and path coupling for one user.

    ``prm`` has shape (len(rx_paths), len(tx_paths)); entry [n, m] couples
    transmit path m to receive path n.  Treated as immutable after
    construction.
    """

    tx_paths: tuple[PathAngles, ...]
    rx_paths: tuple[PathAngles, ...]
    prm: np.ndarray
    carrier_wavelength: float

    def __post_init__(self):
        self.tx_paths = tuple(self.tx_paths)
        self.rx_paths = tuple(self.rx_paths)
        if len(self.tx_paths) < 1 or len(self.rx_paths) < 1:
            raise ValueError("need at least one transmit and one receive path")
        self.prm = np.asarray(self.prm, dtype=complex)
        expected = (len(self.rx_paths), len(self.tx_paths))
        if self.prm.shape != expected:
            raise ValueError(f"prm shape {self.prm.shape} does not match path counts {expected}")
        if not (math.isfinite(self.carrier_wavelength) and self.carrier_wavelength > 0.0):
            raise ValueError(f"carrier_wavelength must be positive, got {self.carrier_wavelength}")

    @property
    def n_tx_paths(self) -> int:
        return len(self.tx_paths)

    @property
    def n_rx_paths(self) -> int:
        return len(self.rx_paths)

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.carrier_wavelength


@dataclass
class CouplingMatrix:
    """Rank-1 Hermitian matrix v.v^H with v = prm . G . 1.

    entries[k, l] is v_k * conj(v_l) exactly by construction, so the matrix
    is Hermitian with real nonnegative diagonal and trace |v|^2.  Independent
    of any receive position.
    """

    entries: np.ndarray
    source_vector: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.entries.shape[0]


def propagation_diff_rx(r: Position2D, path: PathAngles) -> float:
    """Receive-side propagation difference of one path between r and the origin."""
    return r.x * math.cos(path.elevation) * math.sin(path.azimuth) + r.y * math.sin(path.elevation)


def propagation_diff_tx(t: Position2D, path: PathAngles) -> float:
    """Transmit-side propagation difference; the negated receive-side expression."""
    return -(t.x * math.cos(path.elevation) * math.sin(path.azimuth) + t.y * math.sin(path.elevation))


def _direction_cosines(paths: tuple[PathAngles, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Per-path in-plane direction cosines (a_n, b_n)."""
    elev = np.array([p.elevation for p in paths])
    azim = np.array([p.azimuth for p in paths])
    return np.cos(elev) * np.sin(azim), np.sin(elev)


def receive_frv(r: Position2D, model: UserChannelModel) -> np.ndarray:
    """Receive field-response vector: unit phasors exp(-j*k*rho_n(r))."""
    a, b = _direction_cosines(model.rx_paths)
    rho = r.x * a + r.y * b
    return np.exp(-1j * model.wavenumber * rho)


def transmit_frm(array: AntennaArray, model: UserChannelModel) -> np.ndarray:
    """Transmit field-response matrix, one column per array element.

    Entry [m, k] is the unit phasor of transmit path m at element k; the
    transmit-side propagation difference carries a leading minus sign.
    """
    a, b = _direction_cosines(model.tx_paths)
    rho = -(np.multiply.outer(a, array.xs()) + np.multiply.outer(b, array.ys()))
    return np.exp(-1j * model.wavenumber * rho)


def channel_gain(r: Position2D, array: AntennaArray, model: UserChannelModel) -> complex:
    """Complex channel coefficient h(r) = f(r)^T . prm . G . 1."""
    f = receive_frv(r, model)
    g_sum = transmit_frm(array, model) @ np.ones(array.size)
    return complex(f @ (model.prm @ g_sum))


def coupling_matrix(array: AntennaArray, model: UserChannelModel) -> CouplingMatrix:
    """Build the rank-1 coupling matrix for this array/channel pair.

    Entries are computed with the explicit real-arithmetic product formula
    rather than a complex outer product: that keeps Hermitian symmetry
    bitwise-exact (IEEE subtraction is exactly antisymmetric), which a fused
    complex multiply would not.
    """
    v = model.prm @ (transmit_frm(array, model) @ np.ones(array.size))
    x, y = v.real, v.imag
    re = np.outer(x, x) + np.outer(y, y)
    im = np.outer(y, x) - np.outer(x, y)
    return CouplingMatrix(entries=re + 1j * im, source_vector=v)


def expansion_terms(
    m: CouplingMatrix, model: UserChannelModel
) -> tuple[float, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Pairwise cosine-expansion coefficients of |h(r)|^2 for the kernels.

    Returns (diag_sum, amp, da, db, phase) over receive-path pairs k < l:
    amp = 2|M[k,l]|, phase = angle(M[k,l]) (angle 0 for zero entries, where
    the amplitude factor makes the choice inert), and (da, db) the direction
    cosine differences.
    """
    a, b = _direction_cosines(model.rx_paths)
    k_idx, l_idx = np.triu_indices(m.order, k=1)
    off = m.entries[k_idx, l_idx]
    amp = 2.0 * np.abs(off)
    phase = np.angle(off)
    da = a[k_idx] - a[l_idx]
    db = b[k_idx] - b[l_idx]
    diag_sum = float(np.real(np.trace(m.entries)))
    return (
        diag_sum,
        np.ascontiguousarray(amp),
        np.ascontiguousarray(da),
        np.ascontiguousarray(db),
        np.ascontiguousarray(phase),
    )


def channel_power_expansion(r: Position2D, m: CouplingMatrix, model: UserChannelModel) -> float:
    """|h(r)|^2 via the pairwise cosine expansion (nonnegative up to rounding)."""
    diag_sum, amp, da, db, phase = expansion_terms(m, model)
    return _kernels.power_one(r.x, r.y, diag_sum, amp, da, db, phase, model.wavenumber)
