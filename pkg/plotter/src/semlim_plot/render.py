"""Turn a sweep CSV into a multi-series tail-probability figure.

Pure transform: the renderer parses the fixed sweep schema, draws one
solid curve per distinct series label plus a dashed upper-bound overlay
wherever the bound column is populated, and never recomputes statistics.
The outage column is a bound on the complementary probability, so it is
parsed but not overlaid on tail-probability axes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

REQUIRED_COLUMNS = (
    "scenario",
    "series_label",
    "threshold",
    "n",
    "hits",
    "p_hat",
    "ci_low",
    "ci_high",
    "markov_bound",
    "closed_form",
    "outage_lower_bound",
    "seed",
)

# Keeps SVG element ids stable across runs.
matplotlib.rcParams["svg.hashsalt"] = "semlim-plot"


class SchemaError(ValueError):
    """The input CSV does not carry the sweep schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    output_image: Path
    title: str = ""
    x_label: str = "threshold"
    y_label: str = "tail probability"
    log_y: bool = False
    image_format: Optional[str] = None  # inferred from the output suffix if unset


@dataclass
class Series:
    label: str
    thresholds: list = field(default_factory=list)
    p_hat: list = field(default_factory=list)
    markov: list = field(default_factory=list)  # None where the column is empty


@dataclass(frozen=True)
class RenderResult:
    output_image: Path
    series_labels: tuple[str, ...]
    curve_count: int


def _parse_float(row_index: int, column: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise SchemaError(
            f"row {row_index}: column {column!r} holds non-numeric value {text!r}"
        ) from None


def load_series(input_csv: Path) -> list[Series]:
    """Parse the sweep CSV into per-label series, validating the schema."""
    with open(input_csv, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{input_csv}: empty file, expected a sweep CSV header")
        missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{input_csv}: missing required column(s) {', '.join(missing)}")

        table: dict[str, Series] = {}
        for index, row in enumerate(reader, start=2):
            if any(row.get(c) is None for c in REQUIRED_COLUMNS):
                raise SchemaError(f"row {index}: fewer cells than header columns")
            label = row["series_label"]
            series = table.setdefault(label, Series(label))
            series.thresholds.append(_parse_float(index, "threshold", row["threshold"]))
            series.p_hat.append(_parse_float(index, "p_hat", row["p_hat"]))
            bound = row["markov_bound"]
            series.markov.append(_parse_float(index, "markov_bound", bound) if bound else None)

    if not table:
        raise SchemaError(f"{input_csv}: no data rows")
    for series in table.values():
        order = sorted(range(len(series.thresholds)), key=series.thresholds.__getitem__)
        series.thresholds = [series.thresholds[i] for i in order]
        series.p_hat = [series.p_hat[i] for i in order]
        series.markov = [series.markov[i] for i in order]
    return list(table.values())


def render(spec: FigureSpec) -> RenderResult:
    """Draw the figure described by ``spec`` and write it to disk."""
    all_series = load_series(Path(spec.input_csv))

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    curve_count = 0
    positive_values = []
    try:
        for series in all_series:
            (line,) = ax.plot(series.thresholds, series.p_hat, marker="o", label=series.label)
            curve_count += 1
            positive_values.extend(v for v in series.p_hat if v > 0)
            bound_points = [
                (t, b) for t, b in zip(series.thresholds, series.markov) if b is not None
            ]
            if bound_points:
                ax.plot(
                    [t for t, _ in bound_points],
                    [b for _, b in bound_points],
                    linestyle="--",
                    color=line.get_color(),
                    label=f"{series.label} (upper bound)",
                )
                curve_count += 1
                positive_values.extend(b for _, b in bound_points if b > 0)

        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        if spec.title:
            ax.set_title(spec.title)
        if spec.log_y:
            ax.set_yscale("log")
            if positive_values:
                ax.set_ylim(bottom=min(positive_values) * 0.5)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize="small")
        fig.tight_layout()

        output = Path(spec.output_image)
        output.parent.mkdir(parents=True, exist_ok=True)
        fmt = spec.image_format or (output.suffix.lstrip(".").lower() or "png")
        # Drop run-dependent metadata so identical inputs give identical bytes.
        metadata = {"Date": None} if fmt == "svg" else {"Software": None}
        fig.savefig(output, format=fmt, dpi=120, metadata=metadata)
    finally:
        plt.close(fig)

    return RenderResult(
        output_image=Path(spec.output_image),
        series_labels=tuple(s.label for s in all_series),
        curve_count=curve_count,
    )
