#!/usr/bin/env python3
"""List Heegner classes and their genus character weights."""

import argparse
from fractions import Fraction

from heegnerprod.algebra import format_number
from heegnerprod.heegner import classes, genus_char


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--level", type=int, default=37)
    parser.add_argument("--disc", type=int, default=-139)
    parser.add_argument("--root", type=int, default=3)
    parser.add_argument("--delta", type=int, default=-139)
    args = parser.parse_args()
    for cl in classes(args.level, args.disc, args.root):
        chi = genus_char(args.delta, cl.rep, args.level)
        print(f"{str(cl.rep):>16}  w={cl.w}  chi={chi:+d}  weight={Fraction(chi, cl.w)}  "
              f"z={format_number(cl.point)}")


if __name__ == "__main__":
    main()
