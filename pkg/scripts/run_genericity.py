"""Sweep the genericity experiments over a grid and write JSON/CSV per point."""

from __future__ import annotations

import argparse
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from algraph.generic import ExperimentConfig, run_experiment


@dataclass
class Sweep:
    base: ExperimentConfig = field(default_factory=ExperimentConfig)
    parameter: str = "l"
    values: tuple[int, ...] = (10, 20, 40)
    out_dir: Path = Path(os.environ.get("ALG_OUTPUT_DIR", "results"))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A2")
    ap.add_argument("--sampler", choices=["ball", "ball-radius", "walk"], default="ball")
    ap.add_argument("--parameter", choices=["l", "radius", "N"], default="l")
    ap.add_argument("--values", type=int, nargs="+", default=[10, 20, 40])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--m-max", type=int, default=40)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out-dir", default=None)
    a = ap.parse_args()
    base = ExperimentConfig(type=a.type, sampler=a.sampler, samples=a.samples, seed=a.seed,
                            m_max=a.m_max, workers=a.workers)
    sweep = Sweep(base, a.parameter, tuple(a.values))
    if a.out_dir:
        sweep.out_dir = Path(a.out_dir)
    print(f"{sweep.parameter:>6} {'certified':>10} {'unclassified':>13} {'subword':>8}")
    for v in sweep.values:
        cfg = replace(sweep.base, **{sweep.parameter: v})
        rep = run_experiment(cfg)
        rep.write(sweep.out_dir / f"{cfg.type}_{cfg.sampler}_{sweep.parameter}{v}_seed{cfg.seed}.json")
        pr = rep.proportions
        print(f"{v:>6} {pr['loxodromic_certified']['p']:>10.3f} {pr['unclassified']['p']:>13.3f} {pr['subword']['p']:>8.3f}")


if __name__ == "__main__":
    main()
