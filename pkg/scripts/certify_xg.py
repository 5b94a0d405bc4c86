"""Search and certify x_G for a list of types; prints one row per type."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from algraph.garside import context
from algraph.lox import NotFound, search_xG, verify_xG
from algraph.words import format_element

DEFAULT_TYPES = ["A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "D5", "F4", "H3", "H4", "E6", "I2_5", "I2_6", "I2_7"]


@dataclass
class Config:
    types: list[str] = field(default_factory=lambda: list(DEFAULT_TYPES))
    cap: int = 12
    json: bool = False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("types", nargs="*", default=DEFAULT_TYPES)
    ap.add_argument("--cap", type=int, default=12)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    cfg = Config(a.types, a.cap, a.json)
    rows = []
    for name in cfg.types:
        t0 = time.perf_counter()
        ctx = context(name)
        try:
            c = search_xG(ctx, cfg.cap)
        except NotFound as exc:
            rows.append({"type": name, "status": "not-found", "reason": str(exc)})
            continue
        rep = verify_xG(c)
        rows.append({
            "type": name, "status": "certified" if rep.ok else "failed", "r": c.r,
            "xG": format_element(c.xG), "failures": rep.failures, "seconds": round(time.perf_counter() - t0, 3),
        })
    if cfg.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        if r["status"] == "not-found":
            print(f"{r['type']:6} not-found  {r['reason']}")
        else:
            print(f"{r['type']:6} {r['status']:9} r={r['r']:<2} {r['seconds']:6.2f}s  {r['xG']}")


if __name__ == "__main__":
    main()
