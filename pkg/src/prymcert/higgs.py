"""Rank bookkeeping for the eigenspace decomposition of the Prym Higgs bundle.

Nothing here models the Higgs field itself. Per odd character ``chi`` the
Hodge pieces have ranks ``e10 = d_chi`` and ``e01 = d_{chi^-1}``, and the
isomorphism ``theta`` on the ample part forces
``rk A10(chi) = rk A01(chi) = rk A10(chi^-1)``. Subtracting,
``rk F10(chi) - rk F10(chi^-1) = e10(chi) - e10(chi^-1)``, which together with
``rk F >= 0`` gives the flat lower bounds computed below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arith import Character, char_inverse, char_pairing
from .cover import CoveringMatrix, IntegralityError, eigenspace_table, require_valid
from .prym import PrymDatum, odd_characters, prym_profile, ConsistencyError


@dataclass(frozen=True)
class HiggsRankProfile:
    ranks: Mapping[Character, tuple[int, int]]
    total_e10: int

    def e10(self, chi: Character) -> int:
        return self.ranks[chi][0]

    def e01(self, chi: Character) -> int:
        return self.ranks[chi][1]


@dataclass(frozen=True)
class FlatBound:
    bounds: Mapping[Character, int]
    total: int

    def positive(self) -> dict[Character, int]:
        return {chi: b for chi, b in self.bounds.items() if b > 0}


@dataclass(frozen=True)
class GaloisOrbitSet:
    orbits: tuple[tuple[Character, ...], ...]
    unit_count: int  # size of the unit group of Z/L acting

    def __len__(self) -> int:
        return len(self.orbits)


def rank_profile(D: PrymDatum) -> HiggsRankProfile:
    table = eigenspace_table(D.matrix)
    odd = odd_characters(D)
    ranks = {chi: (table[chi], table[char_inverse(chi)]) for chi in odd}
    total = sum(e10 for e10, _ in ranks.values())
    expected = prym_profile(D).prym_dimension
    if total != expected:
        raise ConsistencyError(f"sum of e10 ranks {total} differs from the Prym dimension {expected}")
    return HiggsRankProfile(ranks, total)


def flat_lower_bounds(P: HiggsRankProfile) -> FlatBound:
    """Lower bound ``max(0, e10(chi) - e10(chi^-1))`` for ``rk F10(chi)``."""
    bounds = {chi: max(0, P.e10(chi) - P.e10(char_inverse(chi))) for chi in P.ranks}
    return FlatBound(bounds, sum(bounds.values()))


def galois_orbits(D: PrymDatum) -> GaloisOrbitSet:
    """Orbits of the odd characters under ``chi -> k chi``, ``k`` a unit mod ``lcm(N)``.

    Units mod ``L`` are units mod the even ``N_1``, hence odd, so the action
    preserves parity. Transitivity is not assumed.
    """
    odd = odd_characters(D)
    big_l = math.lcm(*D.matrix.moduli)
    units = [k for k in range(1, big_l) if math.gcd(k, big_l) == 1]
    seen: set[Character] = set()
    orbits = []
    for chi in odd:
        if chi in seen:
            continue
        orbit = tuple(sorted({chi.scale(k) for k in units}))
        seen.update(orbit)
        orbits.append(orbit)
    return GaloisOrbitSet(tuple(orbits), len(units))


def fiber_line_bundle_degree(M: CoveringMatrix, chi: Character) -> int:
    """Degree of ``L_chi`` on a general fibre: ``sum_j a_j(chi)``."""
    require_valid(M)
    if chi.is_trivial:
        raise ValueError("fibre degree is only defined for nontrivial characters")
    deg = sum((char_pairing(chi, col) for col in M.columns), Fraction(0))
    if deg.denominator != 1:
        raise IntegralityError(f"fibre degree of L_({chi}) is the non-integer {deg}")
    return int(deg)


def intersection_number(M: CoveringMatrix, chi: Character, chi2: Character) -> int:
    """Fibre degree of ``omega(R)_- (x) L_chi^-1 (x) L_chi2^-1``, with ``omega(R)_-`` of degree ``s``.

    A negative value is what triggers triviality of the corresponding flat pieces.
    """
    return M.s - fiber_line_bundle_degree(M, chi) - fiber_line_bundle_degree(M, chi2)
