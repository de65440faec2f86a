"""Run the F-stability counterexample over a range of primes and time each step."""

import argparse
import time

from charp_closure_lab import config
from charp_closure_lab.local_cohomology import fstability_counterexample
from charp_closure_lab.poly import is_prime


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    cap = max(p * p for p in args.primes)
    with config.using(config.Config(q_max=max(cap, config.Config().q_max))):
        for p in args.primes:
            if not is_prime(p):
                print(f"p = {p}: skipped, not prime")
                continue
            start = time.perf_counter()
            report = fstability_counterexample(p, strict=False)
            elapsed = time.perf_counter() - start
            print(f"p = {p}: {'holds' if report.ok else 'FAILS'} "
                  f"({len(report.records)} checks, {elapsed:.2f}s)")
            if args.verbose or not report.ok:
                for r in report.records:
                    print(f"    {'ok  ' if r.verdict else 'FAIL'} {r.assertion}")


if __name__ == "__main__":
    main()
