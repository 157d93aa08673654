"""Central elements z_omega obtained from K_omega^{-4} <| U_q(g), for each
fundamental weight and each eps in {0, 1}^rank: closure dimension,
centrality, and the scalar relating tau(z) to the weighted orbit sum."""

import argparse
import itertools
import time

from uqeps.harish_chandra import central_element_from
from uqeps.root_data import EpsChar, build_root_datum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--series", default="A")
    parser.add_argument("--rank", type=int, default=2)
    parser.add_argument("--cap", type=int, default=200)
    parser.add_argument("--show", action="store_true", help="print the elements")
    args = parser.parse_args()
    datum = build_root_datum(args.series, args.rank)
    weights = list(dict.fromkeys([datum.fundamental(r) for r in range(datum.rank)] + [datum.rho]))
    for omega in weights:
        for eps in itertools.product([0, 1], repeat=datum.rank):
            start = time.perf_counter()
            rpt = central_element_from(datum, omega, EpsChar.of(eps), args.cap)
            print(f"omega={omega} eps={eps} dim={rpt.closure_dim} central={rpt.central} "
                  f"scalar={rpt.charmod_scalar} [{time.perf_counter() - start:.1f}s]")
            if args.show:
                print("   ", rpt.element)


if __name__ == "__main__":
    main()
