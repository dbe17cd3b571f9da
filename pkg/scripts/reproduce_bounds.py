"""Run the three grid certifications at full size and print one line per suite."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from smult.verify import default_grid, verify_phi4, verify_veronese, verify_wy


@dataclass
class GridConfig:
    e_max: int = 200
    e_max_veronese: int = 50
    den: int = 16


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--e-max", type=int, default=GridConfig.e_max)
    ap.add_argument("--e-max-veronese", type=int, default=GridConfig.e_max_veronese)
    ap.add_argument("--den", type=int, default=GridConfig.den)
    cfg = GridConfig(**vars(ap.parse_args()))
    grid = default_grid(cfg.den, 4 * cfg.den)
    vgrid = [1 + Fraction(k, cfg.den) for k in range(1, 3 * cfg.den + 1)]
    jobs = [(f"dim {d} quadric bound", lambda d=d: verify_wy(d, range(2, cfg.e_max + 1), grid)) for d in (1, 2, 3)]
    jobs.append(("phi(s,4) bound", lambda: verify_phi4(range(2, cfg.e_max + 1), grid)))
    jobs.append(("strict Veronese bound", lambda: verify_veronese(range(2, cfg.e_max_veronese + 1), vgrid)))
    ok = True
    for name, job in jobs:
        t0 = time.perf_counter()
        rep = job()
        ok &= rep.passed
        print(f"{'PASS' if rep.passed else 'FAIL'}  {name:24s} points={len(rep.points):6d} "
              f"checks={len(rep.checks):4d} failed={len(rep.failures)} ({time.perf_counter() - t0:.1f}s)")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
