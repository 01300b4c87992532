"""Vertex counts of coordinate sections of the unit ball."""

import argparse
import itertools
from collections import Counter
from dataclasses import dataclass

from epspace.configs import load_config
from epspace.norm import section_extreme_points


@dataclass
class Settings:
    config: str = "T"
    dims: str = "2,3"


def main():
    s = Settings()
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(s).items():
        ap.add_argument(f"--{name}", default=val)
    a = ap.parse_args()
    cfg = load_config(a.config)
    for d in (int(v) for v in a.dims.split(",")):
        counts = Counter()
        for coords in itertools.combinations(cfg.window, d):
            counts[len(section_extreme_points(cfg, coords))] += 1
        print(f"dimension {d}: " + ", ".join(f"{n} vertices x{k}" for n, k in sorted(counts.items())))


if __name__ == "__main__":
    main()
