"""Render rate/overhead-vs-speed comparison figures from sweep summary CSVs.

Input files follow the ris-a2g summary schema verbatim:

    speed_kmh,policy,mean_rate_bpshz,overhead_pct,degradation_pct,reconfig_count

Multiple inputs are merged; one curve is drawn per policy label, dashed
when the label contains "regular", solid otherwise.  Alongside the image
the plotted series are dumped to a text file (the input rows, values
untouched, reordered by policy then speed) so that figure content can be
golden-tested without comparing pixels.

Exit codes: 0 success, 2 schema/configuration error, 3 output I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

EXPECTED_COLUMNS = ["speed_kmh", "policy", "mean_rate_bpshz", "overhead_pct",
                    "degradation_pct", "reconfig_count"]
PANELS = ("rate", "overhead", "both")


class SchemaError(Exception):
    """Input file does not match the summary CSV schema."""

    def __init__(self, column: str, message: str):
        self.column = column
        super().__init__(f"column {column!r}: {message}")


@dataclass(frozen=True)
class PlotSpec:
    inputs: tuple
    output: str
    panel: str = "both"
    series_out: str | None = None

    def __post_init__(self):
        if len(self.inputs) == 0:
            raise SchemaError("speed_kmh", "no input files given")
        if self.panel not in PANELS:
            raise SchemaError("panel", f"must be one of {PANELS}")

    @property
    def series_path(self) -> str:
        return self.series_out if self.series_out else self.output + ".series.txt"


@dataclass(frozen=True)
class SeriesRow:
    """One summary row: parsed keys for plotting, raw text for the dump."""

    policy: str
    speed: float
    rate: float
    overhead: float
    raw: str = field(compare=False)


def read_summary(path: str) -> list[SeriesRow]:
    with open(path, encoding="utf-8") as f:
        lines = [ln for ln in f.read().split("\n") if ln != ""]
    if not lines:
        raise SchemaError("speed_kmh", f"{path} is empty")
    header = lines[0].split(",")
    for i, expected in enumerate(EXPECTED_COLUMNS):
        if i >= len(header) or header[i] != expected:
            got = header[i] if i < len(header) else "<missing>"
            raise SchemaError(expected, f"{path} has {got!r} at position {i}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(EXPECTED_COLUMNS):
            raise SchemaError(EXPECTED_COLUMNS[min(len(parts), 5)],
                              f"{path}: row has {len(parts)} fields")
        values = {}
        for name, text in zip(EXPECTED_COLUMNS, parts):
            if name == "policy":
                continue
            try:
                values[name] = float(text)
            except ValueError as e:
                raise SchemaError(name, f"{path}: non-numeric value {text!r}") from e
        rows.append(SeriesRow(policy=parts[1], speed=values["speed_kmh"],
                              rate=values["mean_rate_bpshz"],
                              overhead=values["overhead_pct"], raw=ln))
    return rows


def _style(policy: str, palette: dict) -> dict:
    if policy not in palette:
        palette[policy] = f"C{len(palette)}"
    dashed = "regular" in policy.lower()
    return dict(color=palette[policy], linestyle="--" if dashed else "-",
                marker="o", markersize=4, label=policy)


def load_series(spec: PlotSpec) -> list[SeriesRow]:
    """Read and merge all input files, ordered by policy then speed."""
    rows: list[SeriesRow] = []
    for path in spec.inputs:
        rows.extend(read_summary(path))
    rows.sort(key=lambda r: (r.policy, r.speed))
    return rows


def render_sweep(spec: PlotSpec) -> None:
    """Write the figure and the extracted-series dump for ``spec``."""
    write_outputs(spec, load_series(spec))


def write_outputs(spec: PlotSpec, rows: list[SeriesRow]) -> None:
    # series dump first: it is the golden-testable artifact
    dump = ",".join(EXPECTED_COLUMNS) + "\n" + "".join(r.raw + "\n" for r in rows)
    with open(spec.series_path, "w", encoding="utf-8", newline="") as f:
        f.write(dump)

    policies = sorted({r.policy for r in rows})
    n_panels = 2 if spec.panel == "both" else 1
    fig, axes = plt.subplots(1, n_panels, figsize=(5.2 * n_panels, 4.0), squeeze=False)
    axes = axes[0]
    palette: dict = {}
    panel_defs = []
    if spec.panel in ("rate", "both"):
        panel_defs.append(("Achievable rate", "Mean effective rate [bit/s/Hz]",
                           lambda r: r.rate))
    if spec.panel in ("overhead", "both"):
        panel_defs.append(("Control overhead", "Overhead [% of frame time]",
                           lambda r: r.overhead))
    for ax, (title, ylabel, pick) in zip(axes, panel_defs):
        for policy in policies:
            series = [r for r in rows if r.policy == policy]
            ax.plot([r.speed for r in series], [pick(r) for r in series],
                    **_style(policy, palette))
        ax.set_title(title)
        ax.set_xlabel("UAV speed [km/h]")
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(
        prog="plot", description="Rate/overhead vs UAV speed figure from sweep CSVs")
    p.add_argument("--in", dest="inputs", action="append", required=True,
                   help="summary CSV (repeat for several policies)")
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--panel", choices=PANELS, default="both")
    p.add_argument("--series-out", default=None,
                   help="series dump path (default: <out>.series.txt)")
    a = p.parse_args(argv)
    try:
        spec = PlotSpec(inputs=tuple(a.inputs), output=a.out, panel=a.panel,
                        series_out=a.series_out)
        rows = load_series(spec)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    try:
        write_outputs(spec, rows)
    except OSError as e:
        print(f"output error: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
