"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import mpmath

from .errors import CMError

__all__ = ["RunConfig", "main", "run_command"]

EXIT_USAGE = 64
DEFAULT_PREC = 256
PREC_ENV = "CM_COUNTER_PREC"


@dataclass(frozen=True)
class RunConfig:
    prec: int = DEFAULT_PREC
    sweep_bound: int = 1000
    discriminants: tuple = field(default=(-7, -8, -11, -15, -19, -20, -23, -24, -40))
    output: str = "json"

    def __post_init__(self):
        if self.prec < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.sweep_bound <= 0:
            raise ValueError("sweep bound must be positive")
        if self.output not in ("json", "tsv", "human"):
            raise ValueError(f"unknown output mode {self.output!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        env = os.environ.get(PREC_ENV)
        if env and overrides.get("prec") is None:
            overrides["prec"] = int(env)
        return cls(**{k: v for k, v in overrides.items() if v is not None})


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _emit(obj, cfg: RunConfig, out) -> None:
    if cfg.output == "json":
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    elif isinstance(obj, dict):
        sep = "\t" if cfg.output == "tsv" else ": "
        for k in sorted(obj):
            out.write(f"{k}{sep}{json.dumps(obj[k]) if not isinstance(obj[k], str) else obj[k]}\n")
    else:
        out.write(f"{obj}\n")


def _cplx(z, digits: int):
    return [mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)]


# -------------------------------------------------------------------------------------------------
# subcommands


def cmd_count(args, cfg, out):
    from .counting import CurveFp, count_1mod4, count_special, frobenius_trace

    curve = CurveFp(args.p, args.a, args.b)
    if args.D == -4:
        fd = count_special(curve, "j1728")
    elif args.D == -3:
        fd = count_special(curve, "j0")
    elif args.method == "onemod4":
        fd = count_1mod4(args.D, curve)
    else:
        embed = (args.j0, args.s) if args.j0 is not None and args.s is not None else None
        fd = frobenius_trace(args.D, curve, embed)
    _emit(fd.to_json(), cfg, out)


def cmd_oracle(args, cfg, out):
    from .counting import CurveFp, naive_count

    out.write(f"{naive_count(CurveFp(args.p, args.a, args.b))}\n")


def cmd_construct(args, cfg, out):
    from .counting import cm_construct

    curve, fd, cert = cm_construct(args.D, args.p, count=args.count, trace=args.trace, seed=args.seed)
    _emit({"curve": {"p": curve.p, "a": curve.a, "b": curve.b}, "frobenius": fd.to_json(),
           "certificate": cert.to_json()}, cfg, out)


def cmd_epsilon_table(args, cfg, out):
    from .epsilon import epsilon_table, format_table

    if cfg.output == "json":
        rows = {c.label(): f"i^{k}" for c, k in epsilon_table(args.D).items()}
        _emit(rows, cfg, out)
    else:
        for row in format_table(args.D):
            out.write(row + "\n")


def _poly_out(coeffs, cfg, out, extra=None):
    if args_json(cfg):
        obj = {"coefficients": [str(c) for c in coeffs]}
        obj.update(extra or {})
        _emit(obj, cfg, out)
    else:
        for c in coeffs:
            out.write(f"{c}\n")


def args_json(cfg) -> bool:
    return cfg.output == "json"


def cmd_class_poly(args, cfg, out):
    from .classfield import hilbert_class_poly

    hp = hilbert_class_poly(args.D)
    _poly_out(hp.coeffs, cfg, out, {"D": args.D, "degree": hp.degree})


def cmd_gamma3_poly(args, cfg, out):
    from .classfield import gamma3_poly

    g = gamma3_poly(args.D)
    _poly_out(g.G.coeffs, cfg, out, {"D": args.D, "mode": g.mode, "identity": g.identity_holds()})


def cmd_weber(args, cfg, out):
    from .modfunc import weber_values

    prec = args.prec or cfg.prec
    with mpmath.workprec(prec + 64):
        tau = mpmath.mpc(mpmath.mpf(args.tau[0]), mpmath.mpf(args.tau[1]))
    w = weber_values(tau, prec)
    digits = max(15, int(prec * 0.30103) - 5)
    r1, r2 = w.residuals()
    _emit({
        "eta": _cplx(w.eta, digits),
        "gamma2": _cplx(w.gamma2, digits),
        "gamma3": _cplx(w.gamma3, digits),
        "j": _cplx(w.j, digits),
        "residuals": [mpmath.nstr(r1, 5), mpmath.nstr(r2, 5)],
    }, cfg, out)


def cmd_qcurve(args, cfg, out):
    from .qcurve import qcurve_model

    _emit(qcurve_model(args.d).to_json(), cfg, out)


def cmd_qcurve_check(args, cfg, out):
    from .qcurve import qcurve_crosscheck

    report = qcurve_crosscheck(args.d, args.p)
    _emit(report, cfg, out)
    if not report["agree"]:
        return 4


def cmd_selftest(args, cfg, out):
    from . import selftest

    results = selftest.run(quick=args.quick)
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
    return 0 if all(ok for _, ok, _ in results) else 4


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cmcount", description="Point counts for CM elliptic curves over prime fields.")
    p.add_argument("--prec", type=int, default=None, help=f"working precision in bits (env {PREC_ENV})")
    p.add_argument("--format", choices=["json", "tsv", "human"], default=None)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("count", help="trace and count from the closed formulas")
    c.add_argument("-D", type=int, required=True)
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-a", type=int, required=True)
    c.add_argument("-b", type=int, required=True)
    c.add_argument("--j0", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--method", choices=["main", "onemod4"], default="main")
    c.set_defaults(func=cmd_count)

    o = sub.add_parser("oracle", help="brute-force point count")
    o.add_argument("-p", type=int, required=True)
    o.add_argument("-a", type=int, required=True)
    o.add_argument("-b", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    k = sub.add_parser("construct", help="curve with a prescribed count or trace")
    k.add_argument("-D", type=int, required=True)
    k.add_argument("-p", type=int, required=True)
    g = k.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int)
    g.add_argument("--trace", type=int)
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_construct)

    e = sub.add_parser("epsilon-table", help="epsilon on (O/4O)^x")
    e.add_argument("-D", type=int, required=True)
    e.set_defaults(func=cmd_epsilon_table, default_format="human")

    for name, fn in (("class-poly", cmd_class_poly), ("gamma3-poly", cmd_gamma3_poly)):
        q = sub.add_parser(name)
        q.add_argument("-D", type=int, required=True)
        q.add_argument("--json", action="store_true")
        q.set_defaults(func=fn, default_format="human")

    w = sub.add_parser("weber", help="eta, gamma2, gamma3, j at a point")
    w.add_argument("--tau", nargs=2, required=True, metavar=("RE", "IM"))
    w.add_argument("--prec", type=int, dest="prec", default=None)
    w.set_defaults(func=cmd_weber)

    m = sub.add_parser("qcurve", help="exact Q-curve model")
    m.add_argument("-d", type=int, required=True)
    m.set_defaults(func=cmd_qcurve)

    x = sub.add_parser("qcurve-check", help="compare trace formulas on the Q-curve")
    x.add_argument("-d", type=int, required=True)
    x.add_argument("-p", type=int, required=True)
    x.set_defaults(func=cmd_qcurve_check)

    s = sub.add_parser("selftest", help="run the built-in checks")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_selftest, default_format="human")
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    if not getattr(args, "func", None):
        err.write(parser.format_usage())
        return EXIT_USAGE
    fmt = args.format or ("json" if getattr(args, "json", False) else getattr(args, "default_format", "json"))
    try:
        cfg = RunConfig.from_env(prec=args.prec, output=fmt)
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2
    try:
        status = args.func(args, cfg, out)
    except CMError as exc:
        err.write(f"error ({type(exc).__name__}): {exc}\n")
        return exc.exit_code
    return status or 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
