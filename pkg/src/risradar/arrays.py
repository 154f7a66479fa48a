"""Array geometry, steering vectors, and beampattern evaluation.

Shared math substrate for configuration synthesis and the OFDM radar
simulation.  All angles are in radians over [0, pi] (linear-array
half-space); element phases follow the half-wavelength spacing
convention, i.e. exp(-1j * pi * (f_n / f_c) * l * cos(theta)) for
element index l at subcarrier n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Radar convention (not the CODATA value): keeps c/(2B) range bins at
# exact decimals for the default 200 MHz bandwidth.
SPEED_OF_LIGHT = 3.0e8

CARRIER_ONLY = "carrier"
ALL_SUBCARRIERS = "all"
_MODES = (CARRIER_ONLY, ALL_SUBCARRIERS)

DB_FLOOR = -300.0


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class OfdmParams:
    """OFDM waveform parameters and the quantities derived from them.

    Subcarrier frequencies are f_n = carrier_freq_hz + n * subcarrier_spacing
    for n in 0..num_subcarriers-1, so subcarrier 0 sits exactly at the
    carrier.
    """

    carrier_freq_hz: float
    bandwidth_hz: float
    num_subcarriers: int
    num_symbols: int
    cp_ratio: float = 0.125

    def __post_init__(self):
        if self.carrier_freq_hz <= 0:
            raise ValueError("carrier_freq_hz must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        if int(self.num_subcarriers) < 1:
            raise ValueError("num_subcarriers must be a positive integer")
        if int(self.num_symbols) < 1:
            raise ValueError("num_symbols must be a positive integer")
        if not 0.0 <= self.cp_ratio < 1.0:
            raise ValueError("cp_ratio must lie in [0, 1)")

    @property
    def subcarrier_spacing(self) -> float:
        return self.bandwidth_hz / self.num_subcarriers

    @property
    def symbol_time(self) -> float:
        return 1.0 / self.subcarrier_spacing

    @property
    def total_symbol_time(self) -> float:
        """Symbol duration including the cyclic prefix."""
        return self.symbol_time * (1.0 + self.cp_ratio)

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq_hz

    def subcarrier_freq(self, n: int) -> float:
        if not 0 <= n < self.num_subcarriers:
            raise ValueError(f"subcarrier index {n} outside 0..{self.num_subcarriers - 1}")
        return self.carrier_freq_hz + n * self.subcarrier_spacing

    def subcarrier_wavelength(self, n: int) -> float:
        return SPEED_OF_LIGHT / self.subcarrier_freq(n)

    def wavelength_ratio(self, n: int) -> float:
        """lambda / lambda_n = f_n / f_c, the per-subcarrier phase stretch."""
        return self.subcarrier_freq(n) / self.carrier_freq_hz

    @property
    def range_bin_size(self) -> float:
        return SPEED_OF_LIGHT / (2.0 * self.bandwidth_hz)

    @property
    def unambiguous_range(self) -> float:
        return SPEED_OF_LIGHT / (2.0 * self.subcarrier_spacing)

    @property
    def velocity_bin_size(self) -> float:
        return SPEED_OF_LIGHT / (2.0 * self.carrier_freq_hz * self.num_symbols * self.total_symbol_time)


@dataclass(frozen=True)
class ArrayGeometry:
    """Linear element array: spacing in carrier wavelengths, optional
    per-element path offsets to the receive antenna (zero when co-located)."""

    num_elements: int
    element_spacing_wavelengths: float = 0.5
    element_offsets_m: np.ndarray | None = None

    def __post_init__(self):
        if int(self.num_elements) < 1:
            raise ValueError("num_elements must be a positive integer")
        if self.element_spacing_wavelengths <= 0:
            raise ValueError("element_spacing_wavelengths must be positive")
        if self.element_offsets_m is not None:
            off = np.asarray(self.element_offsets_m, dtype=float)
            if off.shape != (self.num_elements,):
                raise ValueError("element_offsets_m must have one entry per element")
            object.__setattr__(self, "element_offsets_m", _readonly(off))

    @property
    def offsets(self) -> np.ndarray:
        if self.element_offsets_m is None:
            return np.zeros(self.num_elements)
        return self.element_offsets_m


@dataclass(frozen=True)
class RisConfig:
    """Complex reflection coefficients, one column per time slot.

    Magnitudes are unconstrained (convolution-combined configurations
    need amplitude freedom); a config is static when every column is
    identical.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.ndim == 1:
            coeffs = coeffs[:, np.newaxis]
        if coeffs.ndim != 2 or coeffs.shape[0] < 1 or coeffs.shape[1] < 1:
            raise ValueError("coefficients must be a (num_elements, num_slots) matrix")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coefficients", _readonly(coeffs))

    @property
    def num_elements(self) -> int:
        return self.coefficients.shape[0]

    @property
    def num_slots(self) -> int:
        return self.coefficients.shape[1]

    @property
    def is_static(self) -> bool:
        return self.num_slots == 1 or bool(
            np.all(self.coefficients == self.coefficients[:, :1])
        )

    def column(self, m: int) -> np.ndarray:
        return np.asarray(self.coefficients[:, m])

    def static_column(self) -> np.ndarray:
        if not self.is_static:
            raise ValueError("config is not static")
        return self.column(0)

    def negated(self) -> "RisConfig":
        return RisConfig(-self.coefficients)


@dataclass(frozen=True)
class SteeringVector:
    """Per-element complex array response b_n(theta) at one subcarrier."""

    values: np.ndarray
    subcarrier_index: int
    angle_rad: float


def _as_matrix(config) -> np.ndarray:
    """Coerce a RisConfig / vector / matrix to a (num_elements, num_slots) array."""
    if isinstance(config, RisConfig):
        return np.asarray(config.coefficients)
    coeffs = np.asarray(config, dtype=complex)
    if coeffs.ndim == 1:
        return coeffs[:, np.newaxis]
    if coeffs.ndim == 2:
        return coeffs
    raise ValueError("config must be a vector or (num_elements, num_slots) matrix")


def _as_column(config) -> np.ndarray:
    if isinstance(config, RisConfig):
        return config.static_column()
    coeffs = np.asarray(config, dtype=complex)
    if coeffs.ndim != 1:
        raise ValueError("expected a single configuration column")
    return coeffs


def steering_vector(geometry: ArrayGeometry, params: OfdmParams, n: int, theta: float) -> SteeringVector:
    """Array response at subcarrier n for a plane wave from angle theta.

    Element l carries phase exp(-2j*pi*spacing*(f_n/f_c)*l*cos(theta)),
    times exp(-2j*pi*d_l/lambda_n) when element offsets are nonzero.
    """
    if not (isinstance(n, (int, np.integer)) and 0 <= n < params.num_subcarriers):
        raise ValueError(f"subcarrier index {n} outside 0..{params.num_subcarriers - 1}")
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    l = np.arange(geometry.num_elements)
    ratio = params.wavelength_ratio(n)
    phase = -2.0 * np.pi * geometry.element_spacing_wavelengths * ratio * l * np.cos(theta)
    values = np.exp(1j * phase)
    offsets = geometry.offsets
    if np.any(offsets != 0.0):
        values = values * np.exp(-2j * np.pi * offsets / params.subcarrier_wavelength(n))
    return SteeringVector(values=_readonly(values), subcarrier_index=int(n), angle_rad=float(theta))


def pattern_value(config, params: OfdmParams, n: int, theta: float) -> complex:
    """Complex pattern of one configuration column at subcarrier n, angle theta.

    Evaluates sum_l c_l * exp(-1j*omega*l) with omega = pi*(f_n/f_c)*cos(theta)
    (half-wavelength spacing convention; omega = pi*cos(theta) at the carrier).
    """
    column = _as_column(config)
    if not (isinstance(n, (int, np.integer)) and 0 <= n < params.num_subcarriers):
        raise ValueError(f"subcarrier index {n} outside 0..{params.num_subcarriers - 1}")
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    omega = np.pi * params.wavelength_ratio(n) * np.cos(theta)
    l = np.arange(column.size)
    return complex(np.sum(column * np.exp(-1j * omega * l)))


def power_pattern(
    config,
    params: OfdmParams,
    angles,
    subcarrier_mode: str = CARRIER_ONLY,
    geometry: ArrayGeometry | None = None,
) -> np.ndarray:
    """Received power versus angle: sum_n || C^T b_n(phi) ||^2.

    Parameters
    ----------
    config : RisConfig or array
        Coefficients, one column per time slot.
    angles : array of radians
        Evaluation grid (non-empty).
    subcarrier_mode : "carrier" or "all"
        "carrier" restricts the sum to the carrier subcarrier (n = 0);
        "all" sums over every subcarrier with its exact wavelength.
    geometry : ArrayGeometry, optional
        Defaults to half-wavelength spacing with zero offsets.
    """
    coeffs = _as_matrix(config)
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    if angles.size == 0:
        raise ValueError("angle grid must be non-empty")
    if subcarrier_mode not in _MODES:
        raise ValueError(f"subcarrier_mode must be one of {_MODES}")
    num_elements = coeffs.shape[0]
    if geometry is None:
        geometry = ArrayGeometry(num_elements)
    elif geometry.num_elements != num_elements:
        raise ValueError(
            f"geometry has {geometry.num_elements} elements, config has {num_elements}"
        )

    l = np.arange(num_elements)
    cos_grid = np.cos(angles)
    base = -2.0 * np.pi * geometry.element_spacing_wavelengths * np.outer(l, cos_grid)
    offsets = geometry.offsets
    subcarriers = (0,) if subcarrier_mode == CARRIER_ONLY else range(params.num_subcarriers)

    total = np.zeros(angles.shape)
    for n in subcarriers:
        b = np.exp(1j * params.wavelength_ratio(n) * base)
        if np.any(offsets != 0.0):
            b = b * np.exp(-2j * np.pi * offsets / params.subcarrier_wavelength(n))[:, np.newaxis]
        slot_values = coeffs.T @ b  # (num_slots, num_angles)
        total += np.sum(np.abs(slot_values) ** 2, axis=0)
    return total


def normalize_pattern_db(pattern, floor_db: float = DB_FLOOR) -> np.ndarray:
    """Normalize a linear power pattern to peak 0 dB.

    Exact zeros map to floor_db so log-scale plots stay finite; an
    all-zero pattern is rejected.
    """
    p = np.atleast_1d(np.asarray(pattern, dtype=float))
    if np.any(p < 0.0):
        raise ValueError("power pattern must be non-negative")
    peak = p.max() if p.size else 0.0
    if peak <= 0.0:
        raise ValueError("pattern has no positive entry to normalize against")
    out = np.full(p.shape, floor_db)
    nonzero = p > 0.0
    out[nonzero] = 10.0 * np.log10(p[nonzero] / peak)
    return out


def angle_grid_deg(num_points: int = 721) -> np.ndarray:
    """Inclusive [0, 180] degree grid; 721 points gives 0.25 deg steps."""
    if num_points < 2:
        raise ValueError("angle grid needs at least two points")
    return np.linspace(0.0, 180.0, num_points)


def angle_grid(num_points: int = 721) -> np.ndarray:
    """Inclusive [0, pi] radian grid matching angle_grid_deg."""
    return np.deg2rad(angle_grid_deg(num_points))
