"""Free-space line-of-sight channel model.

Per-hop amplitudes follow the Friis free-space law with isotropic
unit-gain elements; the per-element cascaded coefficient is the product
of the two hop amplitudes and a propagation phase set by the total path
length.  Any absolute-level mismatch with real hardware is absorbed into
``RadioParams.calibration_gain``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import DegenerateGeometryError, InvalidParameterError
from .units import SPEED_OF_LIGHT

if TYPE_CHECKING:
    from .ris import PhaseConfig


def wavelength(frequency: float) -> float:
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    if not frequency > 0:
        raise InvalidParameterError("frequency must be > 0")
    return SPEED_OF_LIGHT / frequency


@dataclass(frozen=True)
class CarrierSpec:
    """Carrier frequency plus its derived wavelength."""

    frequency: float

    def __post_init__(self):
        wavelength(self.frequency)  # validates

    @property
    def wavelength(self) -> float:
        return wavelength(self.frequency)


@dataclass(frozen=True)
class RadioParams:
    tx_power: float          # W
    noise_power: float       # W, total in-band noise
    calibration_gain: float = 1.0  # linear, absorbs unmodeled constants

    def __post_init__(self):
        if not self.tx_power > 0:
            raise InvalidParameterError("tx_power must be > 0")
        if not self.noise_power > 0:
            raise InvalidParameterError("noise_power must be > 0")
        if not self.calibration_gain > 0:
            raise InvalidParameterError("calibration_gain must be > 0")


@dataclass
class ChannelCoefficients:
    """Cascaded BS -> element -> user complex gains, one per element."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise InvalidParameterError("coefficients must be a non-empty 1-D array")
        if not np.all(np.isfinite(c)):
            raise InvalidParameterError("coefficients must be finite")
        self.coefficients = c

    def __len__(self) -> int:
        return self.coefficients.size


def friis_amplitude(lam: float, distance: float) -> float:
    """One-hop free-space amplitude; received power is tx * amplitude**2."""
    if not distance > 0:
        raise DegenerateGeometryError("propagation distance must be > 0")
    return lam / (4.0 * math.pi * distance)


def _as_points(x) -> np.ndarray:
    if hasattr(x, "as_array"):
        return x.as_array()
    return np.asarray(x, dtype=float)


def cascaded_coefficients(bs, elements, user, carrier: CarrierSpec,
                          radio: RadioParams) -> ChannelCoefficients:
    """Per-element cascaded gains for given BS/element/user positions.

    ``bs`` and ``user`` are points (Vec3 or length-3 array); ``elements``
    is an (N, 3) array of element world positions.  Coefficient n is

        sqrt(calibration_gain) * [lam/(4 pi d1_n)] * [lam/(4 pi d2_n)]
            * exp(-j 2 pi (d1_n + d2_n) / lam)

    with d1_n the BS-element and d2_n the element-user distance.
    """
    lam = carrier.wavelength
    bs_p = _as_points(bs)
    user_p = _as_points(user)
    el = np.atleast_2d(np.asarray(elements, dtype=float))
    diff1 = el - bs_p
    diff2 = el - user_p
    d1 = np.sqrt(np.einsum("ij,ij->i", diff1, diff1))
    d2 = np.sqrt(np.einsum("ij,ij->i", diff2, diff2))
    if d1.min() <= 0.0 or d2.min() <= 0.0:
        raise DegenerateGeometryError("BS, element and user positions must be distinct")
    amp = math.sqrt(radio.calibration_gain) * (lam / (4.0 * math.pi * d1)) * (lam / (4.0 * math.pi * d2))
    phase = -2.0 * math.pi * (d1 + d2) / lam
    return ChannelCoefficients(amp * np.exp(1j * phase))


def _phase_array(phases) -> np.ndarray:
    if hasattr(phases, "phases"):
        return phases.phases
    return np.asarray(phases, dtype=float)


def snr(channel: ChannelCoefficients, phases: "PhaseConfig", radio: RadioParams) -> float:
    """Linear SNR of the coherently combined reflection under ``phases``."""
    theta = _phase_array(phases)
    c = channel.coefficients
    if theta.size != c.size:
        raise InvalidParameterError(
            f"channel has {c.size} elements but phase config has {theta.size}")
    combined = np.sum(c * np.exp(1j * theta))
    return radio.tx_power * float(np.abs(combined)) ** 2 / radio.noise_power


def effective_rate(snr_linear: float, overhead_fraction: float) -> float:
    """Spectral efficiency (bit/s/Hz) after discounting control overhead."""
    if not snr_linear >= 0:
        raise InvalidParameterError("snr must be >= 0")
    if not 0.0 <= overhead_fraction <= 1.0:
        raise InvalidParameterError("overhead_fraction must lie in [0, 1]")
    return (1.0 - overhead_fraction) * math.log2(1.0 + snr_linear)
