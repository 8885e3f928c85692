"""How the flat lower bound total grows with s for cyclic covers mod 2p."""

import argparse

from prymcert.certify import FLAT_THRESHOLD
from prymcert.cover import CoveringMatrix
from prymcert.higgs import flat_lower_bounds, rank_profile
from prymcert.prym import PrymDatum, prym_profile

ap = argparse.ArgumentParser()
ap.add_argument("--p", type=int, default=5)
ap.add_argument("--steps", type=int, default=6)
args = ap.parse_args()

n = 2 * args.p
print(f"{'s':>4} {'g~':>6} {'g_P':>6} {'flat':>6}  above threshold")
for k in range(1, args.steps + 1):
    D = PrymDatum.with_default_sigma(CoveringMatrix.from_counts((n,), (n * k,)))
    prof = prym_profile(D)
    flat = flat_lower_bounds(rank_profile(D)).total
    print(f"{n * k:>4} {prof.genus_tilde:>6} {prof.prym_dimension:>6} {flat:>6}  {flat >= FLAT_THRESHOLD}")
