"""Print a markdown table of invariants for every family with p, m and s <= max_s.

    python3 scripts/scan_table.py --p 5 7 --m 1 2 --max-s 40
"""

import argparse
from collections import Counter

from prymcert.enumeration import scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--m", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--max-s", type=int, default=40)
    args = ap.parse_args()

    verdicts = Counter()
    print("| p | m | counts | s | genus | prym_dim | flat_total | verdict |")
    print("|---|---|---|---|---|---|---|---|")
    for p in args.p:
        for m in args.m:
            for row in scan(p, m, args.max_s):
                d = row.to_dict()
                verdicts[(p, d["verdict"])] += 1
                print(f"| {p} | {m} | {';'.join(map(str, d['counts']))} | {d['s']} | {d['genus']} "
                      f"| {d['prym_dim']} | {d['flat_total']} | {d['verdict']} |")
    print()
    for (p, verdict), n in sorted(verdicts.items()):
        print(f"p={p}: {n} {verdict}")


if __name__ == "__main__":
    main()
