"""Compare the exact volume of U with seeded Monte Carlo estimates across s in [1, 2]."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from smult.exact import format_scalar
from smult.region import vol_U_exact, vol_U_mc


@dataclass
class MCConfig:
    samples: int = 10**6
    seed: int = 0
    steps: int = 8
    workers: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(MCConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = MCConfig(**vars(ap.parse_args()))
    rows = []
    for k in range(cfg.steps + 1):
        s = 1 + Fraction(k, cfg.steps)
        exact = vol_U_exact(s)
        est = vol_U_mc(s, cfg.samples, cfg.seed, cfg.workers)
        z = (est.estimate - float(exact)) / est.stderr if est.stderr else 0.0
        rows.append({**est.to_dict(exact), "z_score": round(z, 3)})
        print(f"s={format_scalar(s):>5}  exact={float(exact):.6f}  mc={est.estimate:.6f}  "
              f"stderr={est.stderr:.6f}  z={z:+.2f}")
    print(json.dumps({"config": asdict(cfg), "rows": rows}, sort_keys=True))


if __name__ == "__main__":
    main()
