"""Command-line front end.

Subcommands:

  probe     sample the isotropic-curvature functional of a product manifold
  classify  run the (n, c, C) classification, optionally with verified witnesses
  profile   emit CSV samples of a profile family's curvature data
  check     run the full verification suite

Numeric arguments accept decimals or simple fractions (`8/3`) so branch
boundaries can be hit exactly.  The environment variable CIC_SEED overrides
the default seed 42.  Exit codes: 0 success, 1 verification/domain failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import classification as cls
from . import curvature as cv
from . import profiles as pf
from .checks import RunConfig, run_all

_FACTOR_RE = re.compile(r"^([SHR])(\d+)(?::(.+))?$")

_FACTOR_KINDS = {"S": "sphere", "H": "hyperbolic", "R": "flat"}
_DEFAULT_CURVATURE = {"S": 1.0, "H": -1.0, "R": 0.0}


class UsageError(ValueError):
    """Malformed command-line input (exit code 2)."""


def parse_number(text: str):
    """int, Fraction or float from a CLI numeric argument."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        if re.fullmatch(r"[+-]?\d+", text):
            return int(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}: {exc}") from exc


def parse_product(text: str) -> cv.ProductSpec:
    """ProductSpec from the grammar `<S|H|R><dim>[:curvature]` joined by ` x `."""
    factors = []
    for token in text.split(" x "):
        token = token.strip()
        m = _FACTOR_RE.match(token)
        if m is None:
            raise UsageError(
                f"bad factor {token!r}: expected <S|H|R><dim>[:curvature], e.g. S3:1 or R1"
            )
        letter, dim, curv_text = m.group(1), int(m.group(2)), m.group(3)
        curv = float(parse_number(curv_text)) if curv_text is not None else _DEFAULT_CURVATURE[letter]
        try:
            factors.append(cv.Factor(_FACTOR_KINDS[letter], dim, curv))
        except ValueError as exc:
            raise UsageError(f"bad factor {token!r}: {exc}") from exc
    try:
        return cv.ProductSpec(tuple(factors))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _default_seed() -> int:
    return int(os.environ.get("CIC_SEED", cv.DEFAULT_SEED))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isocurv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probe", help="probe a product manifold for constant isotropic curvature")
    p.add_argument("--product", required=True, help="e.g. 'S3:1 x R1' or 'S2:1 x H2:-1'")
    p.add_argument("--frames", type=int, default=cv.DEFAULT_FRAMES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=cv.DEFAULT_PROBE_TOL)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("classify", help="classify (n, c, C)")
    p.add_argument("n", type=int)
    p.add_argument("c")
    p.add_argument("C")
    p.add_argument("--witness", action="store_true", help="attach verified rotation witnesses")
    p.add_argument("--window", type=float, nargs=2, default=pf.DEFAULT_WINDOW, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int, default=pf.DEFAULT_GRID)

    p = sub.add_parser("profile", help="emit CSV curvature samples along a profile")
    p.add_argument("family", choices=("trig", "parabolic", "exponential", "quadratic"))
    p.add_argument("--C", default=None, help="profile-equation constant (trig/exponential)")
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--A", default=None)
    p.add_argument("--B", default=None)
    p.add_argument("--delta", type=int, default=1, help="rotation type (exponential family and ambient)")
    p.add_argument("--c", required=True, help="ambient curvature")
    p.add_argument("--window", type=float, nargs=2, default=pf.DEFAULT_WINDOW, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int, default=pf.DEFAULT_GRID)

    p = sub.add_parser("check", help="run the verification suites")
    p.add_argument("--frames", type=int, default=cv.DEFAULT_FRAMES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=cv.DEFAULT_PROBE_TOL)
    p.add_argument("--window", type=float, nargs=2, default=pf.DEFAULT_WINDOW, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int, default=pf.DEFAULT_GRID)
    p.add_argument("--step", type=float, default=1e-3)
    return parser


def _cmd_probe(args) -> int:
    spec = parse_product(args.product)
    tensor = cv.build_product(spec)
    seed = args.seed if args.seed is not None else _default_seed()
    report = cv.cic_probe(tensor, count=args.frames, seed=seed, tol=args.tol)
    if args.format == "csv":
        sys.stdout.write("samples,min,max,mean,is_constant\n")
        sys.stdout.write(
            f"{report.samples},{report.min!r},{report.max!r},{report.mean!r},{report.is_constant}\n"
        )
    else:
        payload = {
            "product": args.product,
            "dim": spec.total_dim,
            "seed": seed,
            "tol": args.tol,
            "samples": report.samples,
            "min": report.min,
            "max": report.max,
            "mean": report.mean,
            "is_constant": report.is_constant,
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_classify(args) -> int:
    q = cls.ClassQuery(n=args.n, c=parse_number(args.c), C=parse_number(args.C))
    outcomes = cls.classify(q)
    payload = cls.query_to_json(q, outcomes)
    if args.witness:
        window = tuple(args.window)
        for outcome, entry in zip(outcomes, payload["outcomes"]):
            w = cls.witness(outcome, q)
            if isinstance(w, str):
                entry["witness"] = {"symbolic": w}
                continue
            ambient = pf.AmbientSpec(c=float(q.c), delta=w.ode_delta)
            failure = pf.domain_check(w, ambient, window, args.grid)
            info = {"family": outcome.family, "params": _family_params(w)}
            if failure is None:
                samples, deviation = pf.cic_along_profile(w, ambient, window, args.grid)
                info["cic_mean"] = sum(p.cic for p in samples) / len(samples)
                info["cic_max_deviation"] = deviation
            else:
                info["domain_failure"] = {"s": failure.s, "reason": failure.reason}
            entry["witness"] = info
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def _family_params(fam: pf.ProfileFamily) -> dict:
    if isinstance(fam, pf.TrigProfile):
        return {"C": fam.C, "alpha": fam.alpha}
    if isinstance(fam, pf.ParabolicProfile):
        return {"beta": fam.beta}
    if isinstance(fam, pf.ExponentialProfile):
        return {"C": fam.C, "A": fam.A, "B": fam.B, "delta": fam.delta}
    return {"A": fam.A, "B": fam.B}


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for the {args.family} family")
    return float(parse_number(value))


def _build_family(args) -> pf.ProfileFamily:
    try:
        if args.family == "trig":
            return pf.TrigProfile(C=_require(args, "C"), alpha=_require(args, "alpha"))
        if args.family == "parabolic":
            return pf.ParabolicProfile(beta=_require(args, "beta"))
        if args.family == "exponential":
            return pf.ExponentialProfile(
                C=_require(args, "C"), A=_require(args, "A"), B=_require(args, "B"), delta=args.delta
            )
        return pf.QuadraticProfile(A=_require(args, "A"), B=_require(args, "B"))
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from exc


def _cmd_profile(args) -> int:
    fam = _build_family(args)
    try:
        ambient = pf.AmbientSpec(c=float(parse_number(args.c)), delta=args.delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = args.window
    if args.grid < 2 or not hi > lo:
        raise UsageError(f"bad window/grid: {args.window} with {args.grid} points")
    step = (hi - lo) / (args.grid - 1)
    sys.stdout.write("s,x,xp,lambda,mu,cic\n")
    for i in range(args.grid):
        s = lo + i * step
        x, xp, xpp = fam.eval(s)
        try:
            lam, mu = pf.principal_curvatures(ambient, x, xp, xpp, s=s)
        except pf.DomainBreakdown as exc:
            sys.stderr.write(f"domain breakdown: {exc}\n")
            return 1
        cic = 4.0 * ambient.c + 2.0 * (lam * lam + lam * mu)
        sys.stdout.write(f"{s!r},{x!r},{xp!r},{lam!r},{mu!r},{cic!r}\n")
    return 0


def _cmd_check(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = RunConfig(
        seed=seed,
        frames=args.frames,
        window=tuple(args.window),
        grid=args.grid,
        step=args.step,
        tol=args.tol,
    )
    results = run_all(config)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failed += not r.passed
        # timings go to stderr so stdout stays byte-identical across runs
        sys.stdout.write(f"{r.name:<{width}}  {status}  {r.detail}\n")
        sys.stderr.write(f"{r.name}: {r.seconds:.2f}s\n")
    total = sum(r.seconds for r in results)
    sys.stdout.write(f"{len(results) - failed}/{len(results)} suites passed\n")
    sys.stderr.write(f"total: {total:.2f}s\n")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "probe":
            return _cmd_probe(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "profile":
            return _cmd_profile(args)
        return _cmd_check(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, cv.FrameError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BrokenPipeError:
        # downstream consumer (e.g. `head`) closed the pipe; not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
