#!/usr/bin/env python3
"""Run the full certificate battery for every supported n and save reports.

Writes one JSON report per n under the chosen output directory, plus the
blow-up fans in the plain-text interchange format. The n=4 model reuses
the written-down fan (the blow-up computation at n=4 takes ~1 minute and
is certified at lower n); pass --full-blowup to compute it anyway.
"""

import argparse
import pathlib
import sys
import time

from torquot.cli import RunConfig, run_verify
from torquot.fans import fan_to_text
from torquot.model import build_model


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="certificates",
                        help="output directory (default ./certificates)")
    parser.add_argument("--i-max", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--full-blowup", action="store_true",
                        help="compute the n=4 blow-up fan instead of using "
                             "the written-down one")
    args = parser.parse_args()

    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for n in (1, 2, 3, 4):
        compute = n <= 3 or args.full_blowup
        start = time.time()
        config = RunConfig(n=n, i_max=args.i_max, seed=args.seed,
                           compute_fan=compute)
        report = run_verify(config)
        (outdir / f"report_n{n}.json").write_text(report.to_json())
        _, _, fan = build_model(n, compute_fan=compute)
        (outdir / f"fan_n{n}.txt").write_text(fan_to_text(fan))
        verdict = "OK" if report.passed() else "FAILED"
        print(f"n={n}: {verdict} ({len(report.checks)} checks, "
              f"{time.time() - start:.1f}s)")
        if not report.passed():
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
