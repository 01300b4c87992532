"""Run every check suite on the shipped configs and write JSON reports."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from epspace.configs import load_config
from epspace.harness import SUITES, run_suite


@dataclass
class Settings:
    configs: str = "T,G,W"
    suites: str = ",".join(SUITES)
    seed: int = 0
    out: str = "reports"


def main():
    s = Settings()
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(s).items():
        ap.add_argument(f"--{name}", type=type(val), default=val)
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name in a.configs.split(","):
        cfg = load_config(name)
        rep = run_suite(cfg, a.suites.split(","), seed=a.seed)
        print(f"== {cfg.name} ({cfg.digest[:12]})")
        for part in rep.parts:
            print("  " + part.summary())
        print("  " + rep.summary())
        (out / f"{cfg.name}.json").write_text(rep.to_json())
        ok &= rep.ok
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
