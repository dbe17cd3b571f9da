"""Write finite-q convergence tables (CSV) for the rings with lattice oracles.

    python3 scripts/convergence_tables.py --out results/tables --emax 7
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from smult.closed_forms import MonomialPair, Regular, RegularPower, ToricQuadric3
from smult.frobenius import MonomialIdeal, converge_table


@dataclass
class TableConfig:
    out: Path = Path("results/tables")
    emax: int = 7
    base: int = 2
    workers: int = 1


def cases():
    par = MonomialIdeal(2, ((2, 0), (0, 1)))
    yield "regular2_s3-2", Regular(2), Fraction(3, 2)
    yield "regular3_s5-4", Regular(3), Fraction(5, 4)
    yield "m2squared_s3-2", RegularPower(2, 2), Fraction(3, 2)
    yield "param_x2_y_s1", MonomialPair(2, par, par), Fraction(1)
    for s in (Fraction(5, 4), Fraction(3, 2), Fraction(7, 4), Fraction(2)):
        yield f"toric_quadric3_s{s.numerator}-{s.denominator}", ToricQuadric3(), s


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=TableConfig.out)
    ap.add_argument("--emax", type=int, default=TableConfig.emax)
    ap.add_argument("--base", type=int, default=TableConfig.base)
    ap.add_argument("--workers", type=int, default=TableConfig.workers)
    cfg = TableConfig(**vars(ap.parse_args()))
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, ring, s in cases():
        t0 = time.perf_counter()
        emax = min(cfg.emax, 8) if isinstance(ring, ToricQuadric3) else cfg.emax
        tab = converge_table(ring, s, emax, cfg.base, cfg.workers)
        (cfg.out / f"{name}.csv").write_text(tab.to_csv())
        ref = "-" if tab.reference is None else f"{float(tab.reference):.6f}"
        print(f"{name:28s} extrapolated={float(tab.extrapolated):.6f} reference={ref} "
              f"e_s~{float(tab.es_estimate):.4f} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
