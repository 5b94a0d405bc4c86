"""WPD enumeration report for one type and a range of κ."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from algraph.garside import context
from algraph.lox import certified_xG, wpd_enumerate


@dataclass
class Config:
    type: str = "A2"
    kappas: tuple[int, ...] = (1, 2)
    brute: int = 6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A2")
    ap.add_argument("--kappa", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--brute", type=int, default=6)
    a = ap.parse_args()
    cfg = Config(a.type, tuple(a.kappa), a.brute)
    c = certified_xG(context(cfg.type))
    out = [wpd_enumerate(c, k, brute_bound=cfg.brute).to_json() for k in cfg.kappas]
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
