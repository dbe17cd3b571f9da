"""Command-line interface: ``smult <command> [options]``.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 unparseable
rational, 4 malformed ring file, 5 size cap exceeded, 6 no closed form for
the ring, 7 other invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .closed_forms import (
    BoundParams,
    MonomialPair,
    Quadric,
    Regular,
    RegularPower,
    RingSpec,
    ToricQuadric3,
    UnsupportedRing,
    Veronese,
    es_closed_form,
    lower_bound_main,
    lower_bound_trace,
    resolve_r,
)
from .exact import format_scalar, parse_scalar
from .frobenius import (
    MAX_EMAX_REGULAR,
    MAX_EMAX_TORIC,
    CapExceeded,
    MonomialIdeal,
    colength,
    converge_table,
    probe_enlargement_inequality,
)
from .hs import find_peak, hs_piecewise, hs_value
from .region import vol_U_exact, vol_U_mc
from .verify import default_grid, explore_phi, verify_phi4, verify_veronese, verify_wy

EXIT_FAIL, EXIT_RATIONAL, EXIT_RING, EXIT_CAP, EXIT_UNSUPPORTED, EXIT_INVALID = 1, 3, 4, 5, 6, 7


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def rational_arg(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse rational {text!r}: {exc}", EXIT_RATIONAL) from None


def ring_from_json(obj: dict) -> RingSpec:
    """Build a ring description from its JSON form (see README)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("ring JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    d = obj.get("d", obj.get("dim"))
    if kind == "regular":
        return Regular(int(d))
    if kind == "regular_power":
        return RegularPower(int(d), int(obj["n"]))
    if kind == "quadric":
        return Quadric(int(d))
    if kind == "veronese":
        return Veronese(int(obj["e"]))
    if kind == "monomial_pair":
        I, J = MonomialIdeal.from_json(obj["I"]), MonomialIdeal.from_json(obj["J"])
        d = int(d) if d is not None else I.nvars
        if I.nvars != d or J.nvars != d:
            raise ValueError("ideal variable counts do not match d")
        return MonomialPair(d, I, J)
    if kind == "toric_quadric3":
        return ToricQuadric3()
    raise ValueError(f"unknown ring kind {kind!r}")


def load_ring(source: str) -> RingSpec:
    """Ring from a JSON file path, or inline JSON when ``source`` starts with '{'."""
    try:
        text = source if source.lstrip().startswith("{") else Path(source).read_text()
        return ring_from_json(json.loads(text))
    except UnsupportedRing as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"malformed ring {source!r}: {exc}", EXIT_RING) from None


def _emit(args, payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=None if args.compact else 1))


def _grid(args) -> list[Fraction]:
    return default_grid(args.grid_den, args.grid_max, args.grid_min)


# ---------------------------------------------------------------------------
# commands


def cmd_hs(args) -> int:
    if args.piecewise:
        f = hs_piecewise(args.dim)
        _emit(args, {"d": args.dim, "breakpoints": [format_scalar(b) for b in f.breakpoints],
                     "pieces": [[format_scalar(c) for c in p.coeffs] for p in f.pieces]})
        return 0
    if args.s is None:
        raise CliError("hs needs --s or --piecewise", EXIT_INVALID)
    print(format_scalar(hs_value(args.dim, args.s)))
    return 0


def cmd_es(args) -> int:
    ring = load_ring(args.ring)
    try:
        value = es_closed_form(ring, args.s)
    except UnsupportedRing as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    print(format_scalar(value))
    return 0


def _q_cap(ring) -> int:
    toric = isinstance(ring, (ToricQuadric3, Quadric))
    return 2 ** (MAX_EMAX_TORIC if toric else MAX_EMAX_REGULAR)


def cmd_colength(args) -> int:
    ring = load_ring(args.ring)
    if args.q < 1 or args.q > _q_cap(ring):
        raise CliError(f"q must lie in 1..{_q_cap(ring)}", EXIT_CAP)
    try:
        res = colength(ring, args.s, args.q, args.workers)
    except UnsupportedRing as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    _emit(args, {**res.to_dict(), "s": format_scalar(args.s), "d": res.d})
    return 0


def cmd_converge(args) -> int:
    ring = load_ring(args.ring)
    try:
        table = converge_table(ring, args.s, args.emax, args.base, args.workers)
    except UnsupportedRing as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    if args.csv:
        Path(args.csv).write_text(table.to_csv())
    _emit(args, table.to_dict())
    return 0


def cmd_volume(args) -> int:
    out: dict = {"s": format_scalar(args.s)}
    if args.method in ("exact", "both"):
        out["exact"] = format_scalar(vol_U_exact(args.s))
    if args.method in ("mc", "both"):
        est = vol_U_mc(args.s, args.samples, args.seed, args.workers)
        out.update(mc=est.estimate, stderr=est.stderr)
    if args.method == "exact":
        print(out["exact"])
    else:
        _emit(args, out)
    return 0


def cmd_peak(args) -> int:
    lo, hi = find_peak(args.dim, args.r, args.tol)
    _emit(args, {"d": args.dim, "r": args.r, "lo": format_scalar(lo), "hi": format_scalar(hi),
                 "width": format_scalar(hi - lo)})
    return 0


def cmd_bound(args) -> int:
    r_mode = args.r if args.r is not None else args.r_mode
    if args.t is not None:
        r = resolve_r(args.e, r_mode)
        value = lower_bound_main(BoundParams(args.e, args.dim, r, args.t, args.s))
        _emit(args, {"bound": format_scalar(value), "bound_used": f"main[t={format_scalar(args.t)}, r={r}]"})
        return 0
    tr = lower_bound_trace(args.dim, args.e, args.s, r_mode)
    _emit(args, {"bound": format_scalar(tr.value), "bound_used": tr.label,
                 "candidates": {k: format_scalar(v) for k, v in tr.candidates}})
    return 0


def _report(args, report) -> int:
    if args.csv:
        lines = ["d,e,s,bound_used,bound,target,pass"]
        for p in sorted(report.points, key=lambda p: (p.d, p.e, p.s)):
            lines.append(f"{p.d},{p.e},{format_scalar(p.s)},\"{p.bound_used}\","
                         f"{format_scalar(p.bound)},{format_scalar(p.target)},{int(p.passed)}")
        Path(args.csv).write_text("\n".join(lines) + "\n")
    if args.summary:
        d = report.to_dict()
        d.pop("points")
        d["checks"] = [c for c in d["checks"] if not c["pass"]]
        _emit(args, d)
    else:
        print(report.to_json() if not args.compact else json.dumps(report.to_dict(), sort_keys=True))
    return 0 if report.passed else EXIT_FAIL


def cmd_verify_wy(args) -> int:
    return _report(args, verify_wy(args.dim, range(args.e_min, args.e_max + 1), _grid(args)))


def cmd_verify_phi4(args) -> int:
    return _report(args, verify_phi4(range(args.e_min, args.e_max + 1), _grid(args)))


def cmd_verify_veronese(args) -> int:
    grid = [1 + Fraction(k, args.grid_den) for k in range(args.grid_min, args.grid_max + 1)]
    return _report(args, verify_veronese(range(args.e_min, args.e_max + 1), grid))


def cmd_explore(args) -> int:
    _emit(args, explore_phi(args.dim, range(args.e_min, args.e_max + 1), _grid(args)))
    return 0


def cmd_probe(args) -> int:
    try:
        I = MonomialIdeal.from_json(json.loads(args.I))
        J = MonomialIdeal.from_json(json.loads(args.J))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"malformed ideal: {exc}", EXIT_RING) from None
    _emit(args, probe_enlargement_inequality(I, J, args.s, args.q).to_dict())
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smult", description="Exact s-multiplicity computations.")
    p.add_argument("--compact", action="store_true", help="single-line JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--compact", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--json", action="store_true", help="JSON output (default)")
        return sp

    def grid_flags(sp, gmin=1, gmax=64):
        sp.add_argument("--e-min", type=int, default=2)
        sp.add_argument("--e-max", type=int, default=200)
        sp.add_argument("--grid-den", type=int, default=16, help="grid denominator")
        sp.add_argument("--grid-min", type=int, default=gmin)
        sp.add_argument("--grid-max", type=int, default=gmax)
        sp.add_argument("--csv", metavar="PATH")
        sp.add_argument("--summary", action="store_true", help="omit per-point records")

    sp = add("hs", cmd_hs, "H_s(d)")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--s", type=rational_arg)
    sp.add_argument("--piecewise", action="store_true")

    sp = add("es", cmd_es, "closed-form e_s of a ring")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--s", type=rational_arg, required=True)

    sp = add("colength", cmd_colength, "finite-q colength")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--s", type=rational_arg, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("converge", cmd_converge, "convergence table over q = base^k")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--s", type=rational_arg, required=True)
    sp.add_argument("--emax", type=int, default=6)
    sp.add_argument("--base", type=int, default=2)
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--workers", type=int, default=1)

    sp = add("volume", cmd_volume, "volume of the region U")
    sp.add_argument("--s", type=rational_arg, required=True)
    sp.add_argument("--method", choices=("exact", "mc", "both"), default="exact")
    sp.add_argument("--samples", type=int, default=10**6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("peak", cmd_peak, "bracket the maximizer of f_{d,r}")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--tol", type=rational_arg, default=Fraction(1, 2**20))

    sp = add("bound", cmd_bound, "lower bound for e_s")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--e", type=int, required=True, help="multiplicity e(I)")
    sp.add_argument("--s", type=rational_arg, required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--r-mode", choices=("f_rational", "non_f_rational"), default="f_rational")
    sp.add_argument("--t", type=rational_arg)

    sp = add("verify-wy", cmd_verify_wy, "certify e_s(R) >= e_s(R_d) on a grid, d <= 3")
    sp.add_argument("--dim", type=int, required=True)
    grid_flags(sp)

    sp = add("verify-phi4", cmd_verify_phi4, "certify e_s(R) >= phi(s,4) on a grid")
    grid_flags(sp)

    sp = add("verify-veronese", cmd_verify_veronese, "certify e_s(R) > e_s(V_e) for s = 1 + k/den")
    grid_flags(sp, gmax=48)
    sp.set_defaults(e_max=50)

    sp = add("explore-phi", cmd_explore, "bound minus phi(s,d) margins, no verdict")
    sp.add_argument("--dim", type=int, required=True)
    grid_flags(sp)

    sp = add("probe", cmd_probe, "finite-q enlargement inequality slack")
    sp.add_argument("--I", required=True, help='ideal JSON {"vars": d, "gens": [...]}')
    sp.add_argument("--J", required=True)
    sp.add_argument("--s", type=rational_arg, required=True)
    sp.add_argument("--q", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"smult: {exc}", file=sys.stderr)
        return exc.code
    except CapExceeded as exc:
        print(f"smult: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UnsupportedRing as exc:
        print(f"smult: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, ZeroDivisionError) as exc:
        print(f"smult: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
