import subprocess
import sys
from pathlib import Path

import pytest

from plotfig.cli import PlotSpec, SchemaError, main, read_summary, render_sweep

DATA = Path(__file__).parent / "data"
HEADER = "speed_kmh,policy,mean_rate_bpshz,overhead_pct,degradation_pct,reconfig_count"


def _write_csv(path, rows):
    path.write_text(HEADER + "\n" + "\n".join(rows) + "\n")


def test_minimal_single_point(tmp_path):
    csv = tmp_path / "one.csv"
    _write_csv(csv, ["10.0000,adaptive,6.40188,3.26000,4.07000,36.8000"])
    out = tmp_path / "fig.png"
    render_sweep(PlotSpec(inputs=(str(csv),), output=str(out)))
    assert out.stat().st_size > 0
    series = (tmp_path / "fig.png.series.txt").read_text().strip().split("\n")
    assert len(series) == 2  # header + one row


def test_fixed_policy_overhead_is_flat(tmp_path):
    rows = [f"{v}.00000,fixed,6.{90 - v},12.5660,5.00000,142.000" for v in (5, 10, 15)]
    csv = tmp_path / "fixed.csv"
    _write_csv(csv, rows)
    out = tmp_path / "fig.png"
    render_sweep(PlotSpec(inputs=(str(csv),), output=str(out), panel="overhead"))
    dumped = (tmp_path / "fig.png.series.txt").read_text().strip().split("\n")[1:]
    overheads = {ln.split(",")[3] for ln in dumped}
    assert overheads == {"12.5660"}


def test_dump_is_input_reordered_by_speed(tmp_path):
    rows = ["30.0000,adaptive,6.10000,6.53000,7.58000,73.8000",
            "5.00000,adaptive,6.40188,3.26000,4.07000,36.8000",
            "15.0000,adaptive,6.30000,4.97000,5.88000,56.2000"]
    csv = tmp_path / "shuffled.csv"
    _write_csv(csv, rows)
    out = tmp_path / "fig.png"
    render_sweep(PlotSpec(inputs=(str(csv),), output=str(out)))
    dumped = (tmp_path / "fig.png.series.txt").read_text().strip().split("\n")
    assert dumped[0] == HEADER
    assert dumped[1:] == sorted(rows, key=lambda r: float(r.split(",")[0]))


def test_dump_is_byte_stable(tmp_path):
    csv = tmp_path / "in.csv"
    _write_csv(csv, ["5.00000,adaptive,6.40188,3.26000,4.07000,36.8000",
                     "10.0000,fixed-regular,6.45000,3.89000,5.10000,44.0000"])
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render_sweep(PlotSpec(inputs=(str(csv),), output=str(a)))
    render_sweep(PlotSpec(inputs=(str(csv),), output=str(b)))
    assert (tmp_path / "a.png.series.txt").read_bytes() == \
           (tmp_path / "b.png.series.txt").read_bytes()


def test_multiple_inputs_merge(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _write_csv(a, ["5.00000,adaptive,6.40000,3.26000,4.07000,36.8000"])
    _write_csv(b, ["5.00000,fixed,6.58000,12.5660,6.20000,142.000"])
    out = tmp_path / "fig.png"
    render_sweep(PlotSpec(inputs=(str(a), str(b)), output=str(out)))
    dumped = (tmp_path / "fig.png.series.txt").read_text().strip().split("\n")
    assert len(dumped) == 3
    assert dumped[1].split(",")[1] == "adaptive"
    assert dumped[2].split(",")[1] == "fixed"


def test_bad_header_names_column(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("speed_kmh,policy,rate,overhead_pct,degradation_pct,reconfig_count\n")
    with pytest.raises(SchemaError) as err:
        read_summary(str(csv))
    assert err.value.column == "mean_rate_bpshz"


def test_non_numeric_value_names_column(tmp_path):
    csv = tmp_path / "bad.csv"
    _write_csv(csv, ["5.00000,adaptive,fast,3.26000,4.07000,36.8000"])
    with pytest.raises(SchemaError) as err:
        read_summary(str(csv))
    assert err.value.column == "mean_rate_bpshz"


def test_cli_exit_codes(tmp_path):
    good = tmp_path / "good.csv"
    _write_csv(good, ["5.00000,adaptive,6.40000,3.26000,4.07000,36.8000"])
    assert main(["--in", str(good), "--out", str(tmp_path / "f.png")]) == 0
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    assert main(["--in", str(bad), "--out", str(tmp_path / "g.png")]) == 2
    assert main(["--in", str(tmp_path / "missing.csv"),
                 "--out", str(tmp_path / "h.png")]) == 2
    assert main(["--in", str(good), "--out", "/nonexistent-dir/fig.png"]) == 3


def test_acceptance_7_criterion1_csv_golden(tmp_path):
    """End to end through the primary's external interfaces: run the
    criterion-1 adaptive sweep via the ris-a2g CLI, plot it, and compare
    the extracted series byte-for-byte against the frozen golden dump."""
    summary = tmp_path / "fig5_adaptive.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "ris_a2g.cli", "--preset", "paper-fig5",
         "--policy", "adaptive", "--workers", "4", "--out", str(summary)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    out = tmp_path / "fig5.png"
    rc = main(["--in", str(summary), "--out", str(out),
               "--series-out", str(tmp_path / "series.txt")])
    assert rc == 0
    assert out.stat().st_size > 0
    golden = (DATA / "fig5_adaptive_series.golden.txt").read_bytes()
    assert (tmp_path / "series.txt").read_bytes() == golden
