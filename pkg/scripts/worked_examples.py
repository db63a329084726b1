#!/usr/bin/env python3
"""Run the three worked examples and print their reports."""

import argparse
import sys
import time

from heegnerprod.scenarios import verify_gross37, verify_mock6, verify_zagier5


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--zagier-prec", type=int, default=11)
    parser.add_argument("--mock-prec", type=int, default=21)
    parser.add_argument("--gross-prec", type=int, default=30)
    args = parser.parse_args()
    ok = True
    for run, prec in ((verify_zagier5, args.zagier_prec), (verify_mock6, args.mock_prec),
                      (verify_gross37, args.gross_prec)):
        start = time.perf_counter()
        result = run(prec=prec)
        print(result.report())
        print(f"  ({time.perf_counter() - start:.2f} s)\n")
        ok &= result.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
