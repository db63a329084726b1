#!/usr/bin/env python3
"""Central derivatives L'(G_1, chi_d, 1) of the conductor 37 newform with even sign."""

import argparse

from heegnerprod.lfun import GROSS_CURVE, l_derivative, newform_an, required_coefficients, twist_sign

REFERENCE = {-3: "1.47929949207700", -4: "1.81299789721820", -7: "2.11071898017914",
           -11: "3.65679089534028", -136: "5.73824076491330", -139: "0",
           -151: "6.69750855158616", -815: "4.74925836934506", -823: "0",
           -824: "17.5028741140542"}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-12)
    args = parser.parse_args()
    M = max(required_coefficients(37, d, args.tol) for d in REFERENCE)
    G = newform_an(GROSS_CURVE, M)
    print(f"a_n computed for n <= {M}; root number {G.sign}")
    print(f"{'d':>6} {'sign':>5} {'computed':>20} {'reference':>18} {'|diff|':>10}")
    for d, ref in REFERENCE.items():
        value = l_derivative(G, d, args.tol)
        print(f"{d:>6} {twist_sign(G.sign, 37, d):>5} {value:>20.14f} {ref:>18} {abs(value - float(ref)):>10.2e}")


if __name__ == "__main__":
    main()
