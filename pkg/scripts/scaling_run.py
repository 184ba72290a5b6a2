"""Time the three solvers over a size sweep and print the growth tables.

    python scripts/scaling_run.py --storage fixed --sizes 1000 10000 100000
    python scripts/scaling_run.py --storage list --sizes 1000 4000 16000 --reps 1

Writes raw timings to a CSV and a bar chart next to it.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from bandsym import bench, report
from bandsym.solvers import ALGORITHMS


@dataclass
class ScalingConfig:
    sizes: List[int] = field(default_factory=lambda: [1000, 10000, 100000])
    storage: str = "fixed"
    backend: str = "exact"
    reps: int = 3
    seed: int = 0
    out_dir: Path = Path("runs")


def run(cfg: ScalingConfig) -> List[bench.BenchRecord]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = cfg.out_dir / f"timings_{cfg.storage}_{cfg.backend}.csv"
    records = []
    for alg, w in ALGORITHMS.items():
        for n in cfg.sizes:
            spec = bench.GenSpec(n, w, cfg.seed, cfg.backend, cfg.storage)
            system, planted = bench.generate_system(spec)
            recs = bench.time_run(alg, system, cfg.reps, planted)
            bench.write_csv(csv_path, recs)
            records.extend(recs)
            print(f"{alg} n={n}: {min(r.seconds for r in recs):.4f} s (best of {cfg.reps})", flush=True)

    print()
    print(report.format_mean_table(records))
    print()
    print(report.format_alpha_table(bench.alpha_table(records)))
    print()
    print(report.format_ratio_table(bench.ratio_table(records)))
    svg = csv_path.with_suffix(".svg")
    svg.write_text(report.render_svg(records))
    print(f"\nwrote {csv_path} and {svg}")
    return records


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=ScalingConfig().sizes)
    p.add_argument("--storage", choices=["fixed", "list"], default="fixed")
    p.add_argument("--backend", choices=["exact", "float"], default="exact")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", type=Path, default=Path("runs"))
    a = p.parse_args()
    run(ScalingConfig(a.sizes, a.storage, a.backend, a.reps, a.seed, a.out_dir))


if __name__ == "__main__":
    main()
