"""Compare norm_bb with the exhaustive maximum on a full signed grid."""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from epspace.configs import load_config
from epspace.oracle import grid_equivalence


@dataclass
class Settings:
    config: str = "T"
    entries: list = field(default_factory=lambda: ["-2", "-1", "-1/2", "0", "1/2", "1", "2"])
    sample: int = 2000
    seed: int = 0


def main():
    s = Settings()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=s.config)
    ap.add_argument("--entries", default=",".join(s.entries))
    ap.add_argument("--sample", type=int, default=s.sample)
    ap.add_argument("--seed", type=int, default=s.seed)
    a = ap.parse_args()
    cfg = load_config(a.config)
    entries = [Fraction(e) for e in a.entries.split(",")]
    rep = grid_equivalence(cfg, entries, sample=a.sample, seed=a.seed)
    print(f"config {cfg.name}: window {cfg.window[0]}..{cfg.window[-1]}, {len(entries)} entries")
    print(f"grid vectors      {rep.vectors}")
    print(f"norm_bb calls     {rep.bb_calls}")
    print(f"direct samples    {rep.sampled}")
    print(f"mismatches        {len(rep.mismatches)}")
    for x in rep.mismatches:
        print("  ", x.format())
    print(f"runtime           {rep.runtime:.1f}s")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
