"""Rank-one quantum spaces: (w_r, t_r) and the regime of each generalized
Podles sphere, together with the identity check count, over eps and lambda."""

import argparse
import itertools
from fractions import Fraction

from uqeps.quantum_space import TruncatedModule, build_generators, podles_parameters, verify_subalg_relations
from uqeps.root_data import EpsChar, LambdaChar, build_root_datum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rank", type=int, default=1)
    parser.add_argument("--depth", type=int, default=3)
    parser.add_argument("--v0", type=Fraction, default=Fraction(1, 2))
    parser.add_argument("--powers", type=Fraction, nargs="+", default=[Fraction(3, 2), 2, 4])
    args = parser.parse_args()
    datum = build_root_datum("A", args.rank)
    for eps in itertools.product([-1, 0, 1], repeat=datum.rank):
        for m in itertools.product(args.powers, repeat=datum.rank):
            mod = TruncatedModule(datum, LambdaChar.from_alpha_powers(datum, m), EpsChar.of(eps), args.depth)
            gens = build_generators(mod)
            rpt = verify_subalg_relations(mod, gens)
            for r in range(datum.rank):
                p = podles_parameters(mod, r, gens)
                t = p.t.eval_at(args.v0)
                print(f"eps={eps} m={tuple(str(x) for x in m)} r={r + 1} w={p.w} t(v0)={float(t):.6g} "
                      f"regime={p.description} identities={len(rpt.checked)} ok={rpt.ok}")


if __name__ == "__main__":
    main()
