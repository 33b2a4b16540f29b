#!/usr/bin/env python3
"""Regenerate the three headline data sets under demos/out/.

Equivalent to running the CLI on each spec in demos/specs; kept as a script
so the whole set rebuilds with one command.  Output files are two-column
text consumable by gnuplot/pgfplots; reruns are byte-identical.

  efficiency-vs-players   worst-equilibrium inefficiency vs fleet size
  efficiency-vs-exponent  the same ratio vs the cost exponent (I = 12)
  equilibrium-proportion  share of configurations that are equilibria
"""

import json
import time
from pathlib import Path

from chargegame.experiments import SweepSpec, emit_data, run_sweep

HERE = Path(__file__).parent
OUT = HERE / "out"
THREADS = 4

for name in (
    "efficiency_vs_players",
    "efficiency_vs_exponent",
    "equilibrium_proportion",
):
    with open(HERE / "specs" / f"{name}.json") as fh:
        spec = SweepSpec.from_dict(json.load(fh))
    t0 = time.time()
    series = run_sweep(spec, threads=THREADS)
    manifest = emit_data(series, OUT, spec=spec)
    print(f"{spec.label}: {len(series)} series in {time.time() - t0:.1f} s -> {manifest}")
