"""Deterministic frame-stepped simulation loop, sweeps and summaries.

Each frame: advance the nominal pose and the jitter process, let the
policy decide on reconfiguration using the previous frame's feedback,
recompute phases from the channel at the controller's pose estimate if
it fired, then score the true perturbed pose under the currently stored
phases.  Randomness flows only through two named streams (perturbation,
beamformer) spawned from the scenario seed, so runs with different
policies on the same seed see identical UAV motion.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .channel import CarrierSpec, ChannelCoefficients, RadioParams, cascaded_coefficients, snr
from .control import (MANEUVERING_MODES, ControllerState, FeedbackSample, OverheadModel,
                      ReconfigPolicy, decide, overhead_fraction, predict_pose)
from .errors import InvalidParameterError, SimulationError
from .geometry import (Attitude, PerturbationModel, PerturbationState, Pose,
                       TrajectorySpec, Vec3, apply_perturbation, element_positions,
                       pose_at_time, step_perturbation)
from .ris import PhaseConfig, RisSpec, conjugate_phases, robust_phases
from .units import linear_to_db


@dataclass(frozen=True)
class BeamformerSpec:
    """How phases are computed at a reconfiguration event."""

    kind: Literal["conjugate", "robust"] = "conjugate"
    sample_count: int = 200  # robust only: perturbation draws per event

    def __post_init__(self):
        if self.kind not in ("conjugate", "robust"):
            raise InvalidParameterError(f"unknown beamformer kind {self.kind!r}")
        if self.sample_count < 1:
            raise InvalidParameterError("sample_count must be >= 1")


@dataclass(frozen=True)
class Scenario:
    carrier: CarrierSpec
    radio: RadioParams
    ris: RisSpec
    bs_position: Vec3
    user_position: Vec3
    trajectory: TrajectorySpec
    perturbation: PerturbationModel
    policy: ReconfigPolicy
    overhead: OverheadModel
    maneuvering: Literal["coupled", "feedback_based"]
    beamformer: BeamformerSpec
    duration: float
    seed: int
    # Scripted mid-run changes of the perturbation statistics; with
    # proactive_updates the beamformer is recomputed at each change instant.
    perturbation_schedule: tuple = ()
    proactive_updates: bool = False

    def __post_init__(self):
        if self.maneuvering not in MANEUVERING_MODES:
            raise InvalidParameterError(f"unknown maneuvering mode {self.maneuvering!r}")
        if not self.duration > 0:
            raise InvalidParameterError("duration must be > 0")
        if not isinstance(self.seed, int):
            raise InvalidParameterError("seed must be an integer")
        for i, entry in enumerate(self.perturbation_schedule):
            t, model = entry
            if not t >= 0 or not isinstance(model, PerturbationModel):
                raise InvalidParameterError(
                    f"perturbation_schedule[{i}] must be (time >= 0, PerturbationModel)")

    @property
    def n_frames(self) -> int:
        return int(round(self.duration / self.overhead.frame_duration))


@dataclass(frozen=True)
class FrameMetrics:
    t: float
    snr_db: float
    rate: float            # bit/s/Hz before overhead
    effective_rate: float  # (1 - overhead_fraction) * rate
    overhead_fraction: float
    reconfigured: bool


@dataclass(frozen=True)
class RunSummary:
    """Aggregates of one run against its genie baseline."""

    mean_effective_rate: float
    mean_rate: float
    overhead_pct: float
    degradation_pct: float
    reconfig_count: int


@dataclass(frozen=True)
class SpeedSummary:
    """Per-speed aggregates of a sweep, averaged across seeds."""

    speed_mps: float
    mean_effective_rate: float
    mean_rate: float
    overhead_pct: float
    degradation_pct: float
    reconfig_count: float

    def __post_init__(self):
        if not 0.0 <= self.overhead_pct <= 100.0:
            raise InvalidParameterError("overhead_pct must lie in [0, 100]")
        if self.degradation_pct < -1e-9:
            raise InvalidParameterError(
                "degradation_pct below -1e-9 breaks the genie-dominance invariant")


@dataclass(frozen=True)
class SweepSummary:
    policy: str
    rows: tuple


def genie_variant(scenario: Scenario) -> Scenario:
    """Idealized baseline: reconfigure every frame at zero time cost.

    Coupled maneuvering and conjugate matching at the true pose give the
    per-frame SNR optimum, so this run upper-bounds every policy on the
    same seed frame by frame.
    """
    return replace(
        scenario,
        policy=ReconfigPolicy(kind="fixed_period", period_frames=1),
        overhead=OverheadModel(0.0, scenario.overhead.frame_duration),
        maneuvering="coupled",
        beamformer=BeamformerSpec(kind="conjugate"),
    )


def run(scenario: Scenario) -> list[FrameMetrics]:
    """Simulate one scenario, returning per-frame metrics."""
    n_frames = scenario.n_frames
    if n_frames < 1:
        raise InvalidParameterError("duration must cover at least one frame")
    fd = scenario.overhead.frame_duration
    seq = np.random.SeedSequence(scenario.seed)
    pert_seq, beam_seq = seq.spawn(2)
    rng_pert = np.random.default_rng(pert_seq)
    rng_beam = np.random.default_rng(beam_seq)

    bs = scenario.bs_position.as_array()
    user = scenario.user_position.as_array()
    carrier = scenario.carrier
    radio = scenario.radio
    ris_spec = scenario.ris
    beamformer = scenario.beamformer
    coupled = scenario.maneuvering == "coupled"

    def channel_at(pose: Pose) -> ChannelCoefficients:
        return cascaded_coefficients(bs, element_positions(ris_spec, pose), user,
                                     carrier, radio)

    schedule = sorted(scenario.perturbation_schedule, key=lambda e: e[0])
    model = scenario.perturbation
    pert_state = PerturbationState.zero()
    ctrl = ControllerState()
    phases: PhaseConfig | None = None
    prev_eff = 0.0
    out: list[FrameMetrics] = []

    for k in range(n_frames):
        t = k * fd
        force = False
        while schedule and t >= schedule[0][0]:
            model = schedule.pop(0)[1]
            if scenario.proactive_updates:
                force = True
        nominal = pose_at_time(t, scenario.trajectory)
        pert_state = step_perturbation(model, pert_state, rng_pert)
        true_pose = apply_perturbation(nominal, pert_state)

        if ctrl.has_reconfigured:
            ctrl.frames_since_reconfig += 1
        reconf = force or decide(scenario.policy, ctrl, FeedbackSample(prev_eff))

        true_channel: ChannelCoefficients | None = None
        if reconf:
            if coupled:
                est_pose = true_pose
            elif len(ctrl.pose_history) > 0:
                # Poses arrive with one frame of delay; extrapolate to now.
                est_pose = predict_pose(ctrl.pose_history, t - ctrl.pose_history[-1][0])
            else:
                est_pose = nominal  # bootstrap: only the flight plan is known
            est_channel = channel_at(est_pose)
            if est_pose is true_pose:
                true_channel = est_channel
            if beamformer.kind == "conjugate":
                phases = conjugate_phases(est_channel)
            else:
                phases = robust_phases(
                    _perturbation_draws(est_pose, model, beamformer.sample_count,
                                        rng_beam, channel_at))
        if true_channel is None:
            true_channel = channel_at(true_pose)

        snr_lin = snr(true_channel, phases, radio)
        oh = overhead_fraction(reconf, scenario.overhead)
        rate = math.log2(1.0 + snr_lin)
        eff = (1.0 - oh) * rate
        out.append(FrameMetrics(t, linear_to_db(snr_lin), rate, eff, oh, reconf))

        if reconf:
            ctrl.mark_reconfigured(rate)
        ctrl.record_pose(t, true_pose)
        prev_eff = eff
    return out


def _perturbation_draws(center: Pose, model: PerturbationModel, count: int,
                        rng: np.random.Generator, channel_at) -> list[ChannelCoefficients]:
    """Channel samples around a pose, drawn from the stationary jitter law."""
    sa = model.sigma_attitude
    sp = model.sigma_position
    w = rng.standard_normal((count, 6))
    samples = []
    for row in w:
        offset = PerturbationState(
            attitude_offset=Attitude(sa[0] * row[0], sa[1] * row[1], sa[2] * row[2]),
            position_offset=Vec3(sp[0] * row[3], sp[1] * row[4], sp[2] * row[5]),
        )
        samples.append(channel_at(apply_perturbation(center, offset)))
    return samples


def summarize(series: list[FrameMetrics], genie_series: list[FrameMetrics]) -> RunSummary:
    """Aggregate one run against its paired genie baseline."""
    if len(series) != len(genie_series):
        raise InvalidParameterError("series and genie series must have equal length")
    if len(series) == 0:
        raise InvalidParameterError("series must be non-empty")
    mean_eff = float(np.mean([m.effective_rate for m in series]))
    mean_rate = float(np.mean([m.rate for m in series]))
    mean_genie = float(np.mean([m.effective_rate for m in genie_series]))
    overhead_pct = 100.0 * float(np.mean([m.overhead_fraction for m in series]))
    degradation_pct = 100.0 * (1.0 - mean_eff / mean_genie) if mean_genie > 0 else 0.0
    count = sum(1 for m in series if m.reconfigured)
    return RunSummary(mean_eff, mean_rate, overhead_pct, degradation_pct, count)


def _with_speed_seed(base: Scenario, speed: float, seed: int) -> Scenario:
    return replace(base, trajectory=replace(base.trajectory, speed=speed), seed=seed)


def _sweep_point(args) -> tuple:
    base, speed, seed = args
    try:
        scn = _with_speed_seed(base, speed, seed)
        series = run(scn)
        genie_series = run(genie_variant(scn))
        s = summarize(series, genie_series)
        genie_eff = float(np.mean([m.effective_rate for m in genie_series]))
        return (s.mean_effective_rate, s.mean_rate, s.overhead_pct,
                s.reconfig_count, genie_eff)
    except SimulationError as e:
        raise SimulationError(f"sweep point speed={speed} seed={seed} failed: {e}") from e


def sweep(base: Scenario, speeds: list[float], seeds: list[int], *,
          policy_label: str | None = None, workers: int = 1) -> SweepSummary:
    """Run every (speed, seed) pair plus its genie baseline and aggregate.

    Per speed, means are taken across seeds; the degradation is computed
    from those aggregated means.  Results are identical for any number
    of workers because every point derives its own RNG streams from its
    seed and aggregation order is fixed.
    """
    if len(speeds) == 0 or len(seeds) == 0:
        raise InvalidParameterError("speeds and seeds must be non-empty")
    points = [(base, speed, seed) for speed in speeds for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, points, chunksize=4))
    else:
        results = [_sweep_point(p) for p in points]

    label = policy_label if policy_label is not None else _default_label(base.policy)
    rows = []
    n_seeds = len(seeds)
    for i, speed in enumerate(speeds):
        block = results[i * n_seeds:(i + 1) * n_seeds]
        mean_eff = float(np.mean([b[0] for b in block]))
        mean_rate = float(np.mean([b[1] for b in block]))
        overhead_pct = float(np.mean([b[2] for b in block]))
        count = float(np.mean([b[3] for b in block]))
        genie_eff = float(np.mean([b[4] for b in block]))
        degradation = 100.0 * (1.0 - mean_eff / genie_eff) if genie_eff > 0 else 0.0
        rows.append(SpeedSummary(speed, mean_eff, mean_rate, overhead_pct,
                                 degradation, count))
    return SweepSummary(policy=label, rows=tuple(rows))


def _default_label(policy: ReconfigPolicy) -> str:
    return "fixed" if policy.kind == "fixed_period" else "adaptive"
