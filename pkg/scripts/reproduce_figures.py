#!/usr/bin/env python3
"""Run the three standard sweeps and render their figures.

Desk scale (default) uses 10 realizations per cell and finishes in tens of
minutes on a couple of cores; full scale uses 50 and takes correspondingly
longer. Figures are rendered with the ipdmem-figures package when it is
installed; otherwise only the CSVs are produced.

Usage:
    python scripts/reproduce_figures.py --seed 1729 --outdir out/
    python scripts/reproduce_figures.py --seed 1729 --scale full --workers 4
"""

import argparse
import subprocess
import sys
import time
from pathlib import Path

from ipdmem.experiments import heatmap_sweep, heterogeneous_sweep, homogeneous_sweep
from ipdmem.results import ResultsTable, write_results

SCALES = {"desk": (10, 25), "full": (50, 50)}


def progress(line: str) -> None:
    print(line, file=sys.stderr, flush=True)


def render(module: str, csv: Path, image: Path) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", module, str(csv), str(image)], capture_output=True, text=True
    )
    if proc.returncode == 0:
        print(f"rendered {image}")
    else:
        print(f"figure step skipped ({proc.stderr.strip()})", file=sys.stderr)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--scale", choices=sorted(SCALES), default="desk")
    parser.add_argument("--workers", type=int, default=2)
    parser.add_argument("--outdir", default="out")
    args = parser.parse_args()

    curve_reals, heat_reals = SCALES[args.scale]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    jobs = [
        ("homogeneous", lambda: homogeneous_sweep(
            curve_reals, args.seed, workers=args.workers, progress=progress)),
        ("heterogeneous", lambda: heterogeneous_sweep(
            curve_reals, args.seed, workers=args.workers, progress=progress)),
        ("heatmap", lambda: heatmap_sweep(
            heat_reals, args.seed, workers=args.workers, progress=progress)),
    ]
    csvs = {}
    for name, job in jobs:
        start = time.perf_counter()
        sweep = job()
        path = outdir / f"{name}.csv"
        write_results(ResultsTable.from_sweep(sweep), path)
        csvs[name] = path
        print(f"{name}: {len(sweep.cells)} cells in {time.perf_counter() - start:.0f}s -> {path}")

    render("ipdmem_figures.curves", csvs["homogeneous"], outdir / "homogeneous.png")
    render("ipdmem_figures.curves", csvs["heterogeneous"], outdir / "heterogeneous.png")
    render("ipdmem_figures.heatmaps", csvs["heatmap"], outdir / "heatmaps.png")
    return 0


if __name__ == "__main__":
    sys.exit(main())
