"""Phase-only (passive) beamforming for the reflecting surface.

``conjugate_phases`` is the closed-form optimum for a single channel
realization; ``robust_phases`` maximizes the sample-average received
power over a set of channel draws by projected gradient ascent on the
phases; ``brute_force_phases`` is an exhaustive oracle for small
instances used to verify both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelCoefficients
from .errors import CapacityError, InvalidParameterError

TAU = 2.0 * math.pi

# Relative slack when picking the argmax of the exhaustive search, so that
# mathematically tied grid points (equal up to rounding) resolve to the
# lexicographically smallest phase vector.
_TIE_REL_TOL = 1e-12


@dataclass(frozen=True)
class RisSpec:
    """Surface layout: rows x cols elements on a uniform grid."""

    rows: int
    cols: int
    element_spacing: float  # m, typically half a wavelength

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidParameterError("rows and cols must be >= 1")
        if not self.element_spacing > 0:
            raise InvalidParameterError("element_spacing must be > 0")

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols


@dataclass
class PhaseConfig:
    """Reflection phase shifts, one per element, each in [0, 2*pi)."""

    phases: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise InvalidParameterError("phases must be a non-empty 1-D array")
        if not np.all(np.isfinite(p)):
            raise InvalidParameterError("phases must be finite")
        if np.any(p < 0.0) or np.any(p >= TAU):
            raise InvalidParameterError("phases must lie in [0, 2*pi)")
        self.phases = p

    def __len__(self) -> int:
        return self.phases.size


def _canonical(theta: np.ndarray) -> np.ndarray:
    """Map angles into [0, 2*pi), folding the rounding case mod == 2*pi."""
    out = np.mod(theta, TAU)
    out[out >= TAU] = 0.0
    return out


def _sample_matrix(channel_samples) -> np.ndarray:
    if isinstance(channel_samples, ChannelCoefficients):
        channel_samples = [channel_samples]
    if len(channel_samples) == 0:
        raise InvalidParameterError("need at least one channel sample")
    rows = [np.asarray(ch.coefficients, dtype=complex) for ch in channel_samples]
    n = rows[0].size
    if any(r.size != n for r in rows):
        raise InvalidParameterError("all channel samples must have the same length")
    return np.vstack(rows)


def sample_average_power(channel_samples, phases) -> float:
    """Mean over samples of |sum_n c_n exp(j theta_n)|^2."""
    c = _sample_matrix(channel_samples)
    theta = phases.phases if isinstance(phases, PhaseConfig) else np.asarray(phases, dtype=float)
    if theta.size != c.shape[1]:
        raise InvalidParameterError("phase length does not match channel length")
    g = c @ np.exp(1j * theta)
    return float(np.mean(np.abs(g) ** 2))


def conjugate_phases(channel: ChannelCoefficients) -> PhaseConfig:
    """Phase-match every element: theta_n = -arg(c_n) mod 2*pi.

    Elements with exactly zero magnitude get phase 0 (their contribution
    vanishes, so any value would do).
    """
    theta = _canonical(-np.angle(channel.coefficients))
    return PhaseConfig(theta)


def robust_phases(channel_samples, max_iters: int = 500, step: float = 0.1,
                  tolerance: float = 1e-8, return_history: bool = False):
    """Maximize the sample-average received power over the phase vector.

    Projected gradient ascent on the phases (the unit-modulus constraint
    is implicit in the parameterization), initialized at the conjugate
    phases of the element-wise sample mean.  The step is halved until
    the objective improves (monotone ascent) and re-doubled after each
    accepted move; iteration stops when the relative objective change
    drops below ``tolerance`` or after ``max_iters`` accepted steps.

    With ``return_history`` the per-iteration objective values (raw
    units) are returned alongside the configuration.
    """
    c = _sample_matrix(channel_samples)
    n_samples, n = c.shape
    # Scale-invariant problem: normalize so step sizes work at any link budget.
    scale = float(np.sqrt(np.mean(np.abs(c) ** 2)))
    if scale == 0.0:
        raise InvalidParameterError("all-zero channel samples")
    cn = c / scale
    raw_factor = scale * scale  # converts normalized objective back to raw units

    def objective(theta: np.ndarray) -> float:
        g = cn @ np.exp(1j * theta)
        return float(np.mean(np.abs(g) ** 2)) / n

    def gradient(theta: np.ndarray) -> np.ndarray:
        e = np.exp(1j * theta)
        g = cn @ e
        return -(2.0 / n_samples) * np.imag(e * (np.conj(g) @ cn)) / n

    theta = _canonical(-np.angle(np.mean(c, axis=0)))
    obj = objective(theta)
    history = [obj * raw_factor * n]
    step_cur = step
    for _ in range(max_iters):
        grad = gradient(theta)
        trial = step_cur
        cand, cand_obj = theta, obj
        while trial >= 1e-15:
            probe = _canonical(theta + trial * grad)
            probe_obj = objective(probe)
            if probe_obj >= obj:
                cand, cand_obj = probe, probe_obj
                break
            trial /= 2.0
        if cand_obj <= obj:
            break  # no ascent direction left at any step size
        rel_change = (cand_obj - obj) / max(obj, 1e-300)
        theta, obj = cand, cand_obj
        history.append(obj * raw_factor * n)
        step_cur = min(trial * 2.0, 1.0)
        if rel_change < tolerance:
            break
    config = PhaseConfig(theta)
    if return_history:
        return config, np.asarray(history)
    return config


def quantize_phases(config: PhaseConfig, bits: int) -> PhaseConfig:
    """Snap each phase to the nearest of 2**bits uniform levels in [0, 2*pi)."""
    if not 1 <= bits <= 16:
        raise InvalidParameterError("bits must lie in [1, 16]")
    levels = 1 << bits
    width = TAU / levels
    q = np.mod(np.round(config.phases / width), levels)
    return PhaseConfig(q * width)


def brute_force_phases(channel_samples, bits: int) -> PhaseConfig:
    """Exhaustively maximize the sample-average power on a discrete grid.

    Guard: only for N <= 4 elements and at most 2**20 grid points.  Ties
    (within floating-point rounding) resolve to the lexicographically
    smallest phase vector, which makes the result deterministic.
    """
    c = _sample_matrix(channel_samples)
    n = c.shape[1]
    if bits < 1:
        raise InvalidParameterError("bits must be >= 1")
    if n > 4 or bits * n > 20:
        raise CapacityError(
            f"exhaustive search over {n} elements at {bits} bits is too large")
    levels = 1 << bits
    width = TAU / levels
    total = levels ** n
    values = np.empty(total)
    # Lexicographic enumeration: element 0 is the most significant digit.
    weights = levels ** np.arange(n - 1, -1, -1)
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        digits = (idx[:, None] // weights[None, :]) % levels
        e = np.exp(1j * width * digits)
        g = e @ c.T
        values[idx] = np.mean(np.abs(g) ** 2, axis=1)
    best = values.max()
    first = int(np.argmax(values >= best * (1.0 - _TIE_REL_TOL)))
    digits = (first // weights) % levels
    return PhaseConfig(digits * width)
