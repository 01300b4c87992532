"""Build witness families on W and tabulate the validation numbers."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from epspace.configs import load_config
from epspace.constructions import c5_witness
from epspace.schreier import format_set


@dataclass
class Settings:
    config: str = "W"
    alphas: str = "1,2"
    eps: str = "9/10"


def main():
    s = Settings()
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(s).items():
        ap.add_argument(f"--{name}", default=val)
    a = ap.parse_args()
    cfg = load_config(a.config)
    M = list(range(1, cfg.num_blocks + 1))
    print(f"{'alpha':>5} {'order':>5} {'k':>3} {'D':>8} {'max S_alpha sum':>16}  maximiser")
    for alpha in a.alphas.split(","):
        fam = c5_witness(M, alpha, Fraction(a.eps), cfg)
        F, val = fam.largest_small
        print(f"{alpha:>5} {str(fam.order):>5} {fam.k:>3} {str(fam.D):>8} {str(val):>16}  {format_set(F)}")
        for name, passed in fam.checks.items():
            print(f"      {name}: {'ok' if passed else 'FAIL'}")


if __name__ == "__main__":
    main()
