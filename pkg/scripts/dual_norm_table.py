"""Dual norms of sum a_i u_i* against the l_q norm of a, with the constants A and B."""

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from epspace.configs import load_config
from epspace.constructions import combine_u_star
from epspace.harness import b_constant
from epspace.norm import dual_norm
from epspace.numeric import to_mpf


@dataclass
class Settings:
    config: str = "G"
    rows: int = 12
    seed: int = 0


def main():
    s = Settings()
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(s).items():
        ap.add_argument(f"--{name}", type=type(val), default=val)
    a = ap.parse_args()
    cfg = load_config(a.config)
    q = cfg.q
    recip = sum(Fraction(1, len(F)) for F in cfg.blocks)
    A = (1 - recip) / 2 if recip < 1 else None
    B = b_constant(cfg).upper if cfg.mode == "section4" else None
    print(f"q = {q}, A = {A}, B = {mpmath.nstr(B, 12) if B is not None else '-'}")
    print(f"{'coefficients':<32} {'||a||_q':>10} {'dual norm':>12} {'ratio':>8}")
    rng = random.Random(a.seed)
    for _ in range(a.rows):
        coeffs = [Fraction(rng.randint(-10, 10), 10) for _ in range(cfg.num_blocks)]
        if not any(coeffs):
            continue
        lq = sum(abs(to_mpf(c)) ** to_mpf(q) for c in coeffs) ** (1 / to_mpf(q))
        val = dual_norm(combine_u_star(coeffs, cfg), cfg).value
        text = ",".join(str(c) for c in coeffs)
        print(f"{text:<32} {mpmath.nstr(lq, 6):>10} {str(val):>12} {mpmath.nstr(to_mpf(val) / lq, 4):>8}")


if __name__ == "__main__":
    main()
