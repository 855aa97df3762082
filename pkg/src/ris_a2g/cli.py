"""Command-line entry point: scenario ingestion, sweeps, CSV emission.

Config files are JSON whose keys mirror the Scenario fields; values are
SI units.  Convenience keys with ``_dbm``/``_ghz``/``_kmh``/``_ms``/``_deg``
suffixes are accepted and converted at load time, since the scenario
constants are usually quoted in those units.

Exit codes: 0 success, 2 configuration error (unknown preset, parse
failure, invariant violation), 3 output I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys
from dataclasses import dataclass, replace

from .channel import CarrierSpec, RadioParams
from .control import OverheadModel, ReconfigPolicy
from .engine import (BeamformerSpec, FrameMetrics, Scenario, SweepSummary, genie_variant,
                     run, sweep)
from .errors import ConfigurationError, InvalidParameterError, SimulationError
from .geometry import PerturbationModel, TrajectorySpec, Vec3
from .presets import DEFAULT_SWEEP_SEEDS, DEFAULT_SWEEP_SPEEDS_KMH, PRESETS
from .ris import RisSpec
from .units import dbm_to_watts, kmh_to_mps, mps_to_kmh

log = logging.getLogger("ris_a2g")

SUMMARY_HEADER = "speed_kmh,policy,mean_rate_bpshz,overhead_pct,degradation_pct,reconfig_count"
FRAMES_HEADER = "t_s,snr_db,rate_bpshz,effective_rate_bpshz,overhead_frac,reconfigured"


@dataclass(frozen=True)
class RunConfig:
    preset: str | None
    config_path: str | None
    policy: str | None
    speeds_kmh: list[float]
    seeds: list[int]
    out_path: str
    frames_out: str | None
    seed: int | None
    workers: int
    label: str | None
    verbose: bool

    def __post_init__(self):
        if (self.preset is None) == (self.config_path is None):
            raise ConfigurationError("source", "exactly one of --preset/--config required")
        if len(self.speeds_kmh) == 0:
            raise ConfigurationError("speeds", "at least one speed required")
        if len(self.seeds) == 0:
            raise ConfigurationError("seeds", "at least one seed required")
        if self.workers < 1:
            raise ConfigurationError("workers", "must be >= 1")


# -------------------- scenario loading --------------------

def load_scenario(source: str) -> Scenario:
    """Build a validated Scenario from a preset name or a JSON config path."""
    if source in PRESETS:
        return PRESETS[source]()
    if "." in source or "/" in source:
        try:
            with open(source, encoding="utf-8") as f:
                data = json.load(f)
        except OSError as e:
            raise ConfigurationError("config", f"cannot read {source}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError("config", f"invalid JSON in {source}: {e}") from e
        return scenario_from_dict(data)
    raise ConfigurationError(
        "preset", f"unknown preset {source!r}; known: {', '.join(sorted(PRESETS))}")


def _fail(section: str, cls, exc: InvalidParameterError) -> ConfigurationError:
    # name the offending field when the validator message starts with it
    msg = str(exc)
    for f in dataclasses.fields(cls):
        if f.name in msg:
            return ConfigurationError(f"{section}.{f.name}", msg)
    return ConfigurationError(section, msg)


def _section(data: dict, name: str, known: set) -> dict:
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigurationError(name, "expected an object")
    unknown = set(sec) - known
    if unknown:
        raise ConfigurationError(f"{name}.{sorted(unknown)[0]}", "unknown key")
    return sec


def _number(section: str, sec: dict, key: str, default=None):
    if key not in sec:
        if default is None:
            raise ConfigurationError(f"{section}.{key}", "missing required value")
        return default
    v = sec[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ConfigurationError(f"{section}.{key}", "expected a number")
    return float(v)


def _point(data: dict, name: str, default=None) -> Vec3:
    if name not in data:
        if default is None:
            raise ConfigurationError(name, "missing required value")
        return default
    v = data[name]
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ConfigurationError(name, "expected [x, y, z]")
    try:
        return Vec3(float(v[0]), float(v[1]), float(v[2]))
    except (TypeError, ValueError, InvalidParameterError) as e:
        raise ConfigurationError(name, str(e)) from e


def _triple(section: str, sec: dict, key: str, scale: float = 1.0):
    v = sec.get(key)
    if v is None:
        return None
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ConfigurationError(f"{section}.{key}", "expected a list of 3 numbers")
    return tuple(float(x) * scale for x in v)


def scenario_from_dict(data: dict) -> Scenario:
    """Validate a config dictionary and construct the Scenario."""
    top_known = {"carrier", "radio", "ris", "bs_position", "user_position",
                 "trajectory", "perturbation", "policy", "overhead", "maneuvering",
                 "beamformer", "duration", "seed", "proactive_updates",
                 "perturbation_schedule"}
    unknown = set(data) - top_known
    if unknown:
        raise ConfigurationError(sorted(unknown)[0], "unknown key")

    sec = _section(data, "carrier", {"frequency", "frequency_ghz"})
    freq = _number("carrier", sec, "frequency",
                   default=_number("carrier", sec, "frequency_ghz", default=math.nan) * 1e9)
    if math.isnan(freq):
        raise ConfigurationError("carrier.frequency", "missing required value")
    try:
        carrier = CarrierSpec(frequency=freq)
    except InvalidParameterError as e:
        raise _fail("carrier", CarrierSpec, e) from e

    sec = _section(data, "radio", {"tx_power", "tx_power_dbm", "noise_power",
                                   "noise_power_dbm", "calibration_gain"})
    tx = sec.get("tx_power", dbm_to_watts(_number("radio", sec, "tx_power_dbm", default=math.nan)))
    noise = sec.get("noise_power",
                    dbm_to_watts(_number("radio", sec, "noise_power_dbm", default=math.nan)))
    if not isinstance(tx, (int, float)) or math.isnan(tx):
        raise ConfigurationError("radio.tx_power", "missing required value")
    if not isinstance(noise, (int, float)) or math.isnan(noise):
        raise ConfigurationError("radio.noise_power", "missing required value")
    try:
        radio = RadioParams(tx_power=float(tx), noise_power=float(noise),
                            calibration_gain=_number("radio", sec, "calibration_gain",
                                                     default=1.0))
    except InvalidParameterError as e:
        raise _fail("radio", RadioParams, e) from e

    sec = _section(data, "ris", {"rows", "cols", "element_spacing"})
    try:
        ris = RisSpec(rows=int(_number("ris", sec, "rows")),
                      cols=int(_number("ris", sec, "cols")),
                      element_spacing=_number("ris", sec, "element_spacing",
                                              default=carrier.wavelength / 2.0))
    except InvalidParameterError as e:
        raise _fail("ris", RisSpec, e) from e

    bs = _point(data, "bs_position")
    user = _point(data, "user_position")

    sec = _section(data, "trajectory", {"kind", "center", "radius", "altitude",
                                        "speed", "speed_kmh", "initial_angle",
                                        "attitude_rule"})
    speed = sec.get("speed")
    if speed is None and "speed_kmh" in sec:
        speed = kmh_to_mps(_number("trajectory", sec, "speed_kmh"))
    try:
        trajectory = TrajectorySpec(
            kind=sec.get("kind", "circular"),
            center=_point(sec, "center", default=user),
            radius=_number("trajectory", sec, "radius"),
            altitude=_number("trajectory", sec, "altitude"),
            speed=float(speed if speed is not None else 0.0),
            initial_angle=_number("trajectory", sec, "initial_angle", default=0.0),
            attitude_rule=sec.get("attitude_rule", "level"),
        )
    except InvalidParameterError as e:
        raise _fail("trajectory", TrajectorySpec, e) from e

    perturbation = _perturbation_from(data.get("perturbation", {}))

    sec = _section(data, "policy", {"kind", "period_frames", "degradation_threshold",
                                    "min_gap_frames"})
    kind = sec.get("kind", "adaptive")
    if kind == "fixed":
        kind = "fixed_period"
    try:
        policy = ReconfigPolicy(
            kind=kind,
            period_frames=int(_number("policy", sec, "period_frames", default=13)),
            degradation_threshold=_number("policy", sec, "degradation_threshold",
                                          default=0.1),
            min_gap_frames=int(_number("policy", sec, "min_gap_frames", default=1)),
        )
    except InvalidParameterError as e:
        raise _fail("policy", ReconfigPolicy, e) from e

    sec = _section(data, "overhead", {"reconfig_time", "reconfig_time_ms",
                                      "frame_duration", "frame_duration_ms"})
    reconfig = sec.get("reconfig_time",
                       _number("overhead", sec, "reconfig_time_ms", default=math.nan) * 1e-3)
    frame = sec.get("frame_duration",
                    _number("overhead", sec, "frame_duration_ms", default=math.nan) * 1e-3)
    if math.isnan(float(reconfig)) or math.isnan(float(frame)):
        raise ConfigurationError("overhead", "reconfig_time and frame_duration required")
    try:
        overhead = OverheadModel(reconfig_time=float(reconfig), frame_duration=float(frame))
    except InvalidParameterError as e:
        raise _fail("overhead", OverheadModel, e) from e

    sec = _section(data, "beamformer", {"kind", "sample_count"})
    try:
        beamformer = BeamformerSpec(kind=sec.get("kind", "conjugate"),
                                    sample_count=int(_number("beamformer", sec,
                                                             "sample_count", default=200)))
    except InvalidParameterError as e:
        raise _fail("beamformer", BeamformerSpec, e) from e

    schedule = []
    for i, entry in enumerate(data.get("perturbation_schedule", [])):
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ConfigurationError(f"perturbation_schedule[{i}]",
                                     "expected [time_s, perturbation-object]")
        schedule.append((float(entry[0]), _perturbation_from(entry[1], where=f"perturbation_schedule[{i}]")))

    dur = data.get("duration")
    if not isinstance(dur, (int, float)) or isinstance(dur, bool):
        raise ConfigurationError("duration", "missing or non-numeric value")
    try:
        return Scenario(
            carrier=carrier, radio=radio, ris=ris,
            bs_position=bs, user_position=user,
            trajectory=trajectory, perturbation=perturbation,
            policy=policy, overhead=overhead,
            maneuvering=data.get("maneuvering", "feedback_based"),
            beamformer=beamformer,
            duration=float(dur),
            seed=int(data.get("seed", 0)),
            perturbation_schedule=tuple(schedule),
            proactive_updates=bool(data.get("proactive_updates", False)),
        )
    except InvalidParameterError as e:
        raise _fail("scenario", Scenario, e) from e


def _perturbation_from(sec, where: str = "perturbation") -> PerturbationModel:
    if not isinstance(sec, dict):
        raise ConfigurationError(where, "expected an object")
    known = {"sigma_attitude", "sigma_attitude_deg", "sigma_position", "ar_coefficient"}
    unknown = set(sec) - known
    if unknown:
        raise ConfigurationError(f"{where}.{sorted(unknown)[0]}", "unknown key")
    sigma_att = _triple(where, sec, "sigma_attitude")
    if sigma_att is None:
        sigma_att = _triple(where, sec, "sigma_attitude_deg", scale=math.pi / 180.0)
    sigma_pos = _triple(where, sec, "sigma_position")
    try:
        return PerturbationModel(
            sigma_attitude=sigma_att if sigma_att is not None else (0.0, 0.0, 0.0),
            sigma_position=sigma_pos if sigma_pos is not None else (0.0, 0.0, 0.0),
            ar_coefficient=_number(where, sec, "ar_coefficient", default=0.0),
        )
    except InvalidParameterError as e:
        raise _fail(where, PerturbationModel, e) from e


def scenario_to_dict(s: Scenario) -> dict:
    """Canonical (SI-unit) config dictionary; round-trips through
    scenario_from_dict to an equal Scenario."""
    out = {
        "carrier": {"frequency": s.carrier.frequency},
        "radio": {"tx_power": s.radio.tx_power, "noise_power": s.radio.noise_power,
                  "calibration_gain": s.radio.calibration_gain},
        "ris": {"rows": s.ris.rows, "cols": s.ris.cols,
                "element_spacing": s.ris.element_spacing},
        "bs_position": [s.bs_position.x, s.bs_position.y, s.bs_position.z],
        "user_position": [s.user_position.x, s.user_position.y, s.user_position.z],
        "trajectory": {
            "kind": s.trajectory.kind,
            "center": [s.trajectory.center.x, s.trajectory.center.y, s.trajectory.center.z],
            "radius": s.trajectory.radius,
            "altitude": s.trajectory.altitude,
            "speed": s.trajectory.speed,
            "initial_angle": s.trajectory.initial_angle,
            "attitude_rule": s.trajectory.attitude_rule,
        },
        "perturbation": {"sigma_attitude": list(s.perturbation.sigma_attitude),
                         "sigma_position": list(s.perturbation.sigma_position),
                         "ar_coefficient": s.perturbation.ar_coefficient},
        "policy": {"kind": s.policy.kind, "period_frames": s.policy.period_frames,
                   "degradation_threshold": s.policy.degradation_threshold,
                   "min_gap_frames": s.policy.min_gap_frames},
        "overhead": {"reconfig_time": s.overhead.reconfig_time,
                     "frame_duration": s.overhead.frame_duration},
        "maneuvering": s.maneuvering,
        "beamformer": {"kind": s.beamformer.kind,
                       "sample_count": s.beamformer.sample_count},
        "duration": s.duration,
        "seed": s.seed,
    }
    if s.perturbation_schedule:
        out["perturbation_schedule"] = [
            [t, {"sigma_attitude": list(m.sigma_attitude),
                 "sigma_position": list(m.sigma_position),
                 "ar_coefficient": m.ar_coefficient}]
            for t, m in s.perturbation_schedule]
    if s.proactive_updates:
        out["proactive_updates"] = True
    return out


# -------------------- output --------------------

def _fmt(x: float) -> str:
    """Six significant digits, trailing zeros kept, '.' decimal separator."""
    return format(float(x), "#.6g")


def write_results(summary: SweepSummary, per_frame: list[FrameMetrics] | None,
                  out_path: str, frames_path: str | None = None) -> None:
    """Write the summary CSV and, when given, the per-frame CSV."""
    lines = [SUMMARY_HEADER]
    for row in summary.rows:
        lines.append(",".join([
            _fmt(mps_to_kmh(row.speed_mps)),
            summary.policy,
            _fmt(row.mean_effective_rate),
            _fmt(row.overhead_pct),
            _fmt(row.degradation_pct),
            _fmt(row.reconfig_count),
        ]))
    with open(out_path, "w", encoding="utf-8", newline="") as f:
        f.write("\n".join(lines) + "\n")
    if per_frame is not None and frames_path is not None:
        lines = [FRAMES_HEADER]
        for m in per_frame:
            lines.append(",".join([
                _fmt(m.t), _fmt(m.snr_db), _fmt(m.rate), _fmt(m.effective_rate),
                _fmt(m.overhead_fraction), "1" if m.reconfigured else "0",
            ]))
        with open(frames_path, "w", encoding="utf-8", newline="") as f:
            f.write("\n".join(lines) + "\n")


# -------------------- entry point --------------------

def _apply_policy(scenario: Scenario, policy: str | None) -> tuple[Scenario, str]:
    if policy is None or policy == "":
        label = "fixed" if scenario.policy.kind == "fixed_period" else "adaptive"
        return scenario, label
    if policy == "genie":
        return genie_variant(scenario), "genie"
    if policy == "fixed":
        return replace(scenario, policy=replace(scenario.policy, kind="fixed_period")), "fixed"
    if policy == "adaptive":
        return replace(scenario, policy=replace(scenario.policy, kind="adaptive")), "adaptive"
    raise ConfigurationError("policy", f"unknown policy {policy!r}")


def _parse_args(argv) -> RunConfig:
    p = argparse.ArgumentParser(
        prog="ris-a2g",
        description="Link-level sweep simulator for a UAV-mounted reflecting surface")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in scenario")
    src.add_argument("--config", help="JSON scenario file")
    p.add_argument("--policy", choices=["fixed", "adaptive", "genie"],
                   help="override the scenario's reconfiguration policy")
    p.add_argument("--speeds-kmh", default=None,
                   help="comma-separated sweep speeds in km/h "
                        "(default: 5,10,...,50)")
    p.add_argument("--seeds", default=None,
                   help="comma-separated sweep seeds (default: 0..9)")
    p.add_argument("--seed", type=int, default=None,
                   help="single seed; shorthand for --seeds SEED")
    p.add_argument("--out", required=True, help="summary CSV path")
    p.add_argument("--frames-out", default=None,
                   help="per-frame CSV for the first (speed, seed) point")
    p.add_argument("--label", default=None,
                   help="policy label in the summary CSV (default: policy name)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel sweep processes (results identical to sequential)")
    p.add_argument("-v", "--verbose", action="store_true")
    a = p.parse_args(argv)

    try:
        speeds = ([float(x) for x in a.speeds_kmh.split(",")]
                  if a.speeds_kmh else list(DEFAULT_SWEEP_SPEEDS_KMH))
        seeds = ([int(x) for x in a.seeds.split(",")] if a.seeds
                 else ([a.seed] if a.seed is not None else list(DEFAULT_SWEEP_SEEDS)))
    except ValueError as e:
        raise ConfigurationError("speeds/seeds", str(e)) from e
    return RunConfig(preset=a.preset, config_path=a.config, policy=a.policy,
                     speeds_kmh=speeds, seeds=seeds, out_path=a.out,
                     frames_out=a.frames_out, seed=a.seed, workers=a.workers,
                     label=a.label, verbose=a.verbose)


def main(argv=None) -> int:
    try:
        cfg = _parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        base = load_scenario(cfg.preset if cfg.preset else cfg.config_path)
        if cfg.seed is not None:
            base = replace(base, seed=cfg.seed)
        scenario, label = _apply_policy(base, cfg.policy)
        if cfg.label:
            label = cfg.label
        speeds_mps = [kmh_to_mps(v) for v in cfg.speeds_kmh]
        log.info("sweep: %d speeds x %d seeds, policy=%s",
                 len(speeds_mps), len(cfg.seeds), label)
        summary = sweep(scenario, speeds_mps, cfg.seeds,
                        policy_label=label, workers=cfg.workers)
        per_frame = None
        if cfg.frames_out:
            first = replace(scenario,
                            trajectory=replace(scenario.trajectory, speed=speeds_mps[0]),
                            seed=cfg.seeds[0])
            per_frame = run(first)
    except ConfigurationError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    except (InvalidParameterError, SimulationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    try:
        write_results(summary, per_frame, cfg.out_path, cfg.frames_out)
    except OSError as e:
        print(f"output error: {e}", file=sys.stderr)
        return 3
    log.info("wrote %s", cfg.out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
