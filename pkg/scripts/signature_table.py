"""Killing signatures of the real forms of g_eps = sl(l+1) contractions,
with the su(p, q) name whenever eps is a sign vector."""

import argparse
import itertools
import json

from uqeps.contraction import contraction_row


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--signs-only", action="store_true", help="skip eps with zero entries")
    args = parser.parse_args()
    values = [-1, 1] if args.signs_only else [-1, 0, 1]
    for l in range(1, args.max_rank + 1):
        for eps in itertools.product(values, repeat=l):
            row = contraction_row(l, eps)
            print(json.dumps({"rank": l, "eps": list(eps), "signature": list(row.signature),
                              "form": row.form, "ok": row.ok}))


if __name__ == "__main__":
    main()
