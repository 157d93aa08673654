"""PSD verdicts of the invariant form on M_lambda over a grid of
lambda_{alpha_r}^4 = q^{m_r}, for every eps in {-1, 0, 1}^rank."""

import argparse
import itertools
from fractions import Fraction

from uqeps.root_data import EpsChar, LambdaChar, build_root_datum
from uqeps.verma import is_unitarizable_up_to


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--series", default="A")
    parser.add_argument("--rank", type=int, default=2)
    parser.add_argument("--depth", type=int, default=4)
    parser.add_argument("--v0", type=Fraction, default=Fraction(1, 2))
    parser.add_argument("--powers", type=Fraction, nargs="+", default=[1, 2, 3, 4])
    args = parser.parse_args()

    datum = build_root_datum(args.series, args.rank)
    print(f"# {datum.name}, depth {args.depth}, v0 = {args.v0}")
    print("eps\tm\tverdict\tranks by height")
    for eps in itertools.product([-1, 0, 1], repeat=datum.rank):
        for m in itertools.product(args.powers, repeat=datum.rank):
            lam = LambdaChar.from_alpha_powers(datum, m)
            v = is_unitarizable_up_to(datum, lam, EpsChar.of(eps), args.depth, args.v0)
            ms = ",".join(str(x) for x in m)
            print(f"{eps}\t({ms})\t{'PSD' if v.psd else 'neg'}\t{v.height_ranks()}")


if __name__ == "__main__":
    main()
