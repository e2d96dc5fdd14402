"""Plot-ready density series
=============================

Estimates a Gaussian kernel density (Silverman bandwidth) for two samples
and emits the overlay as a self-contained SVG plus two-column CSV data,
the same artifacts the comparison run writes per metric.

Run:  python demos/04_density_series.py
"""

import csv
import tempfile
from pathlib import Path

import numpy as np

from lexigauge import emit_density_svg, kde

rng = np.random.default_rng(12)
lengths_a = rng.normal(92, 25, size=400).clip(20, 280)   # shorter titles
lengths_b = rng.normal(99, 22, size=400).clip(20, 280)   # longer titles

series_a = kde(lengths_a, grid_points=256)
series_b = kde(lengths_b, grid_points=256)
print(f"bandwidths: {series_a.bandwidth:.2f} / {series_b.bandwidth:.2f}")
print(f"integral a: {np.trapezoid(series_a.density, series_a.grid):.4f}")
print(f"integral b: {np.trapezoid(series_b.density, series_b.grid):.4f}")

out_dir = Path(tempfile.mkdtemp(prefix="lexigauge-demo-"))
for name, series in [("corpus_a", series_a), ("corpus_b", series_b)]:
    with open(out_dir / f"density_{name}.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "density"])
        writer.writerows(zip(series.grid, series.density))

svg = emit_density_svg(series_a, series_b, labels=("corpus a", "corpus b"),
                       title="title length")
(out_dir / "density_title_length.svg").write_bytes(svg)
print("artifacts in", out_dir)
