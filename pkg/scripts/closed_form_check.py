"""Compare cyclic totally ramified covers against their closed forms.

For each prime p and each s that is a multiple of 2p up to the bound, the
eigenspace table of the all-ones matrix mod 2p is checked against
d_k = -1 + s(1 - k/2p) and the genus against (s/2 - 1)(2p - 1).
"""

import argparse

from prymcert.arith import is_prime
from prymcert.certify import closed_form_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-p", type=int, default=19)
    ap.add_argument("--multiples", type=int, default=4, help="largest s is this many times 2p")
    args = ap.parse_args()

    failures = 0
    for p in filter(is_prime, range(2, args.max_p + 1)):
        for k in range(1, args.multiples + 1):
            s = 2 * p * k
            rep = closed_form_report(p, s)
            failures += not rep["match"]
            print(f"p={p:3d} s={s:4d} genus={rep['general']['genus']:6d} match={rep['match']}")
    print(f"{failures} failures")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
