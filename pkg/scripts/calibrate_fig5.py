#!/usr/bin/env python3
"""Parameter study behind the paper-fig5 preset calibration.

The nominal scenario (geometry, carrier, powers, surface size) is fixed by
the reproduced experiment; frame duration, reconfiguration cost, adaptive
threshold, trigger gap, jitter sigma/correlation, run length and start
angle are free parameters.  This script evaluates the frozen preset (and
any overrides) over the 5-50 km/h sweep and reports the band checks the
calibration had to land:

  * adaptive overhead_pct in [3, 18] at every speed, in [5, 15] at >= half
  * adaptive degradation_pct vs the genie baseline < 10 everywhere
  * Spearman rank correlation of reconfig_count vs speed >= 0.9
  * fixed policy: overhead exactly constant, mean rate strictly decreasing

Frozen outcome (see ris_a2g.presets.paper_fig5): 10 ms frames, 5 ms
reconfiguration cost, adaptive threshold 0.015 with a 2-frame gap,
0.65 deg/axis attitude jitter at lag-1 correlation 0.8, half-lap run
starting at the ring point closest to the BS, genie SNR calibrated to
20 dB at that start pose.

Two structural choices matter more than the numbers:
  * the run starts at the BS-closest ring point and lasts half a lap at
    the top sweep speed, so every speed averages over a prefix of the
    same strictly-decreasing-SNR arc (otherwise arc coverage differences
    mask the staleness trend the fixed-rate criterion checks);
  * light fast attitude jitter gives the adaptive trigger a low-speed
    event floor; without it the event rate is proportional to speed and
    no reconfiguration cost keeps 5 and 50 km/h inside the same
    overhead band while degradation stays below 10%.

Usage: python scripts/calibrate_fig5.py [--sigma-deg X] [--rho X]
         [--delta X] [--reconfig-ms X] [--seeds N] [--workers N]
"""

import argparse
import math
from dataclasses import replace

import numpy as np

from ris_a2g.control import ReconfigPolicy
from ris_a2g.engine import sweep
from ris_a2g.geometry import PerturbationModel
from ris_a2g.presets import DEFAULT_SWEEP_SPEEDS_KMH, paper_fig5
from ris_a2g.units import kmh_to_mps


def spearman(x, y):
    def ranks(v):
        v = np.asarray(v, dtype=float)
        order = np.argsort(v, kind="stable")
        r = np.empty(len(v))
        r[order] = np.arange(1, len(v) + 1)
        for val in np.unique(v):
            mask = v == val
            r[mask] = r[mask].mean()
        return r

    rx, ry = ranks(x), ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sigma-deg", type=float, default=None)
    ap.add_argument("--rho", type=float, default=None)
    ap.add_argument("--delta", type=float, default=None)
    ap.add_argument("--reconfig-ms", type=float, default=None)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--workers", type=int, default=8)
    args = ap.parse_args()

    scn = paper_fig5()
    if args.sigma_deg is not None:
        s = math.radians(args.sigma_deg)
        scn = replace(scn, perturbation=replace(scn.perturbation,
                                                sigma_attitude=(s, s, s)))
    if args.rho is not None:
        scn = replace(scn, perturbation=replace(scn.perturbation,
                                                ar_coefficient=args.rho))
    if args.delta is not None:
        scn = replace(scn, policy=replace(scn.policy,
                                          degradation_threshold=args.delta))
    if args.reconfig_ms is not None:
        scn = replace(scn, overhead=replace(scn.overhead,
                                            reconfig_time=args.reconfig_ms * 1e-3))

    speeds = [kmh_to_mps(v) for v in DEFAULT_SWEEP_SPEEDS_KMH]
    seeds = list(range(args.seeds))

    adaptive = sweep(scn, speeds, seeds, workers=args.workers)
    oh = [r.overhead_pct for r in adaptive.rows]
    deg = [r.degradation_pct for r in adaptive.rows]
    cnt = [r.reconfig_count for r in adaptive.rows]
    rho_s = spearman(DEFAULT_SWEEP_SPEEDS_KMH, cnt)
    in_band = all(3.0 <= o <= 18.0 for o in oh)
    mid = sum(1 for o in oh if 5.0 <= o <= 15.0)
    print("adaptive:")
    print("  oh :", ["%.2f" % o for o in oh], f"[3,18]={in_band} [5,15]x{mid}")
    print("  deg:", ["%.2f" % d for d in deg], f"max={max(deg):.2f}")
    print("  cnt:", ["%.1f" % c for c in cnt], f"spearman={rho_s:.3f}")

    fixed = sweep(replace(scn, policy=replace(scn.policy, kind="fixed_period")),
                  speeds, seeds, workers=args.workers)
    rates = [r.mean_rate for r in fixed.rows]
    ohs = [r.overhead_pct for r in fixed.rows]
    dec = all(b < a for a, b in zip(rates, rates[1:]))
    print(f"fixed K={scn.policy.period_frames}:")
    print("  oh const:", len(set(ohs)) == 1, f"({ohs[0]:.3f}%)")
    print("  rate:", ["%.4f" % r for r in rates], f"strictly decreasing={dec}")

    ok = (in_band and mid >= len(oh) / 2 and max(deg) < 10.0 and rho_s >= 0.9
          and len(set(ohs)) == 1 and dec)
    print("ALL BANDS:", "PASS" if ok else "FAIL")


if __name__ == "__main__":
    main()
