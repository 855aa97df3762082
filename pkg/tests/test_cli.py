import json
import math

import pytest

from ris_a2g.cli import (load_scenario, main, scenario_from_dict, scenario_to_dict,
                         write_results)
from ris_a2g.engine import SpeedSummary, SweepSummary, run
from ris_a2g.errors import ConfigurationError
from ris_a2g.presets import paper_fig5
from ris_a2g.units import kmh_to_mps


def minimal_config(**overrides):
    cfg = {
        "carrier": {"frequency_ghz": 30},
        "radio": {"tx_power_dbm": 24, "noise_power_dbm": -80},
        "ris": {"rows": 2, "cols": 2},
        "bs_position": [0, 0, 0],
        "user_position": [70, 0, 0],
        "trajectory": {"kind": "circular", "radius": 25, "altitude": 20,
                       "speed_kmh": 30},
        "policy": {"kind": "adaptive", "degradation_threshold": 0.1},
        "overhead": {"reconfig_time_ms": 1, "frame_duration_ms": 10},
        "duration": 0.5,
        "seed": 3,
    }
    cfg.update(overrides)
    return cfg


def test_preset_fig5_matches_reported_setup():
    scn = load_scenario("paper-fig5")
    assert scn.ris.n_elements == 100
    assert scn.carrier.frequency == 30e9
    assert scn.user_position.x == 70.0
    assert scn.trajectory.radius == 25.0
    assert scn.trajectory.altitude == 20.0
    assert scn.radio.tx_power == pytest.approx(10 ** (24 / 10) * 1e-3)
    assert scn.radio.noise_power == pytest.approx(1e-11)


def test_unknown_preset_rejected():
    with pytest.raises(ConfigurationError):
        load_scenario("paper-fig6")


def test_config_file_units_are_converted(tmp_path):
    path = tmp_path / "scn.json"
    path.write_text(json.dumps(minimal_config()))
    scn = load_scenario(str(path))
    assert scn.carrier.frequency == 30e9
    assert scn.radio.tx_power == pytest.approx(0.25118864315095796)
    assert scn.trajectory.speed == pytest.approx(kmh_to_mps(30))
    assert scn.overhead.reconfig_time == pytest.approx(0.001)
    assert scn.seed == 3


def test_negative_radius_names_field(tmp_path):
    cfg = minimal_config()
    cfg["trajectory"]["radius"] = -1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg))
    with pytest.raises(ConfigurationError) as err:
        load_scenario(str(path))
    assert err.value.field == "trajectory.radius"


def test_unknown_key_is_rejected(tmp_path):
    cfg = minimal_config()
    cfg["trajectory"]["radiues"] = 10
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg))
    with pytest.raises(ConfigurationError) as err:
        load_scenario(str(path))
    assert "radiues" in err.value.field


def test_round_trip_preserves_scenario():
    for preset in ("paper-fig5", "static-uav", "nomadic-uav"):
        scn = load_scenario(preset)
        again = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(scn))))
        assert again == scn


def test_round_trip_with_schedule():
    scn = load_scenario("static-uav")
    from dataclasses import replace
    from ris_a2g.geometry import PerturbationModel
    scheduled = replace(scn, perturbation_schedule=(
        (2.0, PerturbationModel(sigma_attitude=(0.1, 0.1, 0.1), ar_coefficient=0.5)),),
        proactive_updates=True)
    again = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(scheduled))))
    assert again == scheduled


def _tiny_summary():
    return SweepSummary(policy="adaptive", rows=(
        SpeedSummary(speed_mps=kmh_to_mps(5.0), mean_effective_rate=6.40188,
                     mean_rate=6.5, overhead_pct=10.0, degradation_pct=3.2109,
                     reconfig_count=17.0),
    ))


def test_write_results_formatting(tmp_path):
    out = tmp_path / "summary.csv"
    write_results(_tiny_summary(), None, str(out))
    text = out.read_text()
    lines = text.split("\n")
    assert lines[0] == "speed_kmh,policy,mean_rate_bpshz,overhead_pct,degradation_pct,reconfig_count"
    assert lines[1] == "5.00000,adaptive,6.40188,10.0000,3.21090,17.0000"
    assert text.endswith("\n") and len(lines) == 3  # header + row + trailing newline


def test_write_results_round_trip_values(tmp_path):
    out = tmp_path / "summary.csv"
    write_results(_tiny_summary(), None, str(out))
    row = out.read_text().split("\n")[1].split(",")
    assert float(row[0]) == pytest.approx(5.0, rel=1e-6)
    assert float(row[2]) == pytest.approx(6.40188, rel=1e-6)
    assert float(row[3]) == pytest.approx(10.0, rel=1e-6)


def test_cli_end_to_end_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    frames = tmp_path / "frames.csv"
    args = ["--preset", "nomadic-uav", "--speeds-kmh", "10", "--seeds", "1",
            "--frames-out", str(frames)]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = frames.read_text().split("\n")[0]
    assert header == "t_s,snr_db,rate_bpshz,effective_rate_bpshz,overhead_frac,reconfigured"


def test_cli_policy_override_genie(tmp_path):
    out = tmp_path / "genie.csv"
    rc = main(["--preset", "nomadic-uav", "--policy", "genie", "--speeds-kmh", "10",
               "--seeds", "0", "--out", str(out)])
    assert rc == 0
    row = out.read_text().split("\n")[1].split(",")
    assert row[1] == "genie"
    assert float(row[3]) == 0.0  # zero-cost reconfiguration
    assert float(row[4]) == 0.0  # genie does not degrade vs itself


def test_cli_exit_code_on_bad_config(tmp_path):
    bad = tmp_path / "bad.json"
    cfg = minimal_config()
    cfg["trajectory"]["radius"] = -5
    bad.write_text(json.dumps(cfg))
    assert main(["--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2


def test_cli_exit_code_on_unknown_preset(tmp_path):
    assert main(["--preset", "paper-fig5", "--seeds", "zzz",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_cli_exit_code_on_unwritable_output():
    rc = main(["--preset", "nomadic-uav", "--speeds-kmh", "10", "--seeds", "0",
               "--out", "/nonexistent-dir/summary.csv"])
    assert rc == 3


def test_frames_csv_matches_run(tmp_path):
    frames = tmp_path / "frames.csv"
    rc = main(["--preset", "nomadic-uav", "--speeds-kmh", "10", "--seeds", "2",
               "--out", str(tmp_path / "s.csv"), "--frames-out", str(frames)])
    assert rc == 0
    from dataclasses import replace
    scn = load_scenario("nomadic-uav")
    scn = replace(scn, trajectory=replace(scn.trajectory, speed=kmh_to_mps(10)), seed=2)
    series = run(scn)
    lines = frames.read_text().strip().split("\n")
    assert len(lines) == len(series) + 1
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert first[5] == "1"
