"""Command line interface: certificate runs, fan export, cohomology queries."""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass

from .cech import line_bundle_cohomology
from .fans import (TDivisor, fan_to_text, line_twist_divisor, projbundle_fan,
                   star_fan)
from .lattice import CapacityError, LatticeError
from .model import build_model, verify_model
from .report import CertificateReport, CheckResult
from .sheaves import (ProjBundleData, line_twist_cohomology,
                      verify_deformation_vanishings)

CHECK_GROUPS = ("model", "cohomology", "properties")


@dataclass(frozen=True)
class RunConfig:
    n: int
    i_max: int = 5
    checks: tuple = CHECK_GROUPS
    out: str = None
    format: str = "text"
    seed: int = 0
    compute_fan: bool = True


def _add_common(parser):
    parser.add_argument("--n", type=int, required=True,
                        help="half-dimension of the quotient (1..4)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torquot",
        description="certificates for the 1/3(1,2,...,1,2) quotient model")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the verification certificate")
    _add_common(p_verify)
    p_verify.add_argument("--i-max", type=int, default=5,
                          help="largest twist order for the vanishing checks")
    p_verify.add_argument("--checks", default=",".join(CHECK_GROUPS),
                          help="comma-separated groups: model,cohomology,properties")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--seed", type=int, default=0,
                          help="seed for the randomized property checks")
    p_verify.add_argument("--expected-fan", action="store_true",
                          help="skip the blow-up computation, use the "
                               "written-down fan (faster, n=4)")

    p_fan = sub.add_parser("fan", help="print the blow-up fan (interchange format)")
    _add_common(p_fan)
    p_fan.add_argument("--star", type=int, default=None,
                       help="1-based ray number: print the star fan instead")
    p_fan.add_argument("--expected-fan", action="store_true",
                       help="skip the blow-up computation")

    p_coh = sub.add_parser("cohomology",
                           help="cohomology of O_F(t) x p*O(l) on P(O(a)+O^n)")
    p_coh.add_argument("--n", type=int, required=True)
    p_coh.add_argument("--a", type=int, default=2)
    p_coh.add_argument("--t", type=int, required=True)
    p_coh.add_argument("--l", type=int, required=True)
    p_coh.add_argument("--oracle-check", action="store_true",
                       help="cross-check against the toric Cech computation")
    p_coh.add_argument("--out", default=None)
    return parser


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _property_checks(config):
    """Seeded randomized consistency checks, reported like certificates."""
    rng = random.Random(config.seed)
    report = CertificateReport(config={"seed": config.seed})

    start = time.perf_counter()
    fan = projbundle_fan(2, 2)
    mismatches = []
    for _ in range(6):
        t = rng.randint(0, 3)
        l = rng.randint(-3, 3)
        div = line_twist_divisor(fan, 2, t, l)
        cech = line_bundle_cohomology(div)
        push = line_twist_cohomology(ProjBundleData(2, 2), t, l)
        if cech.dims() != push.dims():
            mismatches.append({"t": t, "l": l, "cech": cech.dims(),
                               "push": push.dims()})
    millis = (time.perf_counter() - start) * 1000.0
    report.add(CheckResult(
        name="random-line-twists-cech-vs-pushforward",
        status="pass" if not mismatches else "fail",
        citation="cohomology-cross-check",
        witness={"mismatches": mismatches},
        millis=round(millis, 3)))

    start = time.perf_counter()
    serre_bad = []
    for _ in range(4):
        coeffs = tuple(rng.randint(-2, 2) for _ in fan.rays)
        div = TDivisor(fan, coeffs)
        dual = TDivisor(fan, tuple(-1 - c for c in coeffs))  # K - D
        hd = line_bundle_cohomology(div).dims()
        hk = line_bundle_cohomology(dual).dims()
        if hd != tuple(reversed(hk)):
            serre_bad.append({"coeffs": coeffs, "hd": hd, "hk": hk})
    millis = (time.perf_counter() - start) * 1000.0
    report.add(CheckResult(
        name="random-divisors-serre-duality",
        status="pass" if not serre_bad else "fail",
        citation="cohomology-cross-check",
        witness={"mismatches": serre_bad},
        millis=round(millis, 3)))
    return report


def _cohomology_checks(config):
    if config.n < 2:
        report = CertificateReport(config={"n": config.n})
        report.add(CheckResult(
            name="deformation-vanishings", status="skip",
            citation="deformation-vanishing",
            witness={"reason": "n >= 2 required"}, millis=0.0))
        return report
    return verify_deformation_vanishings(config.n, config.i_max)


def run_verify(config):
    report = CertificateReport(config={
        "n": config.n, "i_max": config.i_max, "checks": list(config.checks),
        "seed": config.seed, "compute_fan": config.compute_fan})
    if "model" in config.checks:
        report.merge(verify_model(config.n, compute_fan=config.compute_fan))
    if "cohomology" in config.checks:
        report.merge(_cohomology_checks(config))
    if "properties" in config.checks:
        report.merge(_property_checks(config))
    return report


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            checks = tuple(x for x in args.checks.split(",") if x)
            unknown = [x for x in checks if x not in CHECK_GROUPS]
            if unknown:
                print(f"error: unknown check group(s): {', '.join(unknown)}",
                      file=sys.stderr)
                return 2
            config = RunConfig(n=args.n, i_max=args.i_max, checks=checks,
                               out=args.out, format=args.format,
                               seed=args.seed,
                               compute_fan=not args.expected_fan)
            report = run_verify(config)
            if config.format == "json":
                _emit(report.to_json(), config.out)
            else:
                _emit("\n".join(report.text_lines()) + "\n", config.out)
            return 0 if report.passed() else 1

        if args.command == "fan":
            _, _, fan = build_model(args.n, compute_fan=not args.expected_fan)
            if args.star is not None:
                if not 1 <= args.star <= len(fan.rays):
                    print(f"error: --star must be in 1..{len(fan.rays)}",
                          file=sys.stderr)
                    return 2
                fan = star_fan(fan, args.star - 1)
            _emit(fan_to_text(fan), args.out)
            return 0

        if args.command == "cohomology":
            bundle = ProjBundleData(n=args.n, a=args.a)
            vec = line_twist_cohomology(bundle, args.t, args.l)
            lines = [f"H^*(F, O_F({args.t}) x p*O({args.l})) on "
                     f"P(O({args.a}) + O^{args.n}): {vec.pretty()}"]
            status = 0
            if args.oracle_check:
                fan = projbundle_fan(args.a, args.n)
                div = line_twist_divisor(fan, args.n, args.t, args.l)
                oracle = line_bundle_cohomology(div)
                agree = oracle.dims() == vec.dims()
                lines.append(f"cech oracle: {oracle.pretty()} "
                             f"({'agrees' if agree else 'MISMATCH'})")
                if not agree:
                    status = 1
            _emit("\n".join(lines) + "\n", args.out)
            return status
    except CapacityError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except LatticeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
