"""Exact residue arithmetic on finite products of cyclic groups.

Rationals are :class:`fractions.Fraction`, which is always kept reduced with a
positive denominator. Group elements and characters of
``Z_{N_1} x ... x Z_{N_m}`` are identified through ``1 -> exp(2 pi i / N_k)``
on each factor, so a character is just a residue vector.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Moduli = tuple[int, ...]


def _as_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"{what} must be an integer, got {x!r}")
    return x


def check_moduli(moduli: Sequence[int]) -> Moduli:
    """Return ``moduli`` as a tuple, raising if any ``N_k < 2``."""
    mods = tuple(_as_int(n, "modulus") for n in moduli)
    if not mods:
        raise ValueError("moduli must be non-empty")
    for k, n in enumerate(mods, start=1):
        if n < 2:
            raise ValueError(f"modulus N_{k} = {n} must be >= 2")
    return mods


def frac(q) -> Fraction:
    """Fractional part ``q - floor(q)``, always in ``[0, 1)``."""
    q = Fraction(q)
    return q - math.floor(q)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def element_order(moduli: Moduli, residues: Sequence[int]) -> int:
    """Order of ``residues`` in ``prod Z_{N_k}``."""
    return math.lcm(*(n // math.gcd(n, r % n) for n, r in zip(moduli, residues)))


@dataclass(frozen=True, order=True)
class Character:
    components: tuple[int, ...]
    moduli: Moduli

    def __post_init__(self):
        comps = tuple(_as_int(c, "character component") for c in self.components)
        mods = check_moduli(self.moduli)
        if len(comps) != len(mods):
            raise ValueError(
                f"character has {len(comps)} components but there are {len(mods)} moduli"
            )
        for k, (c, n) in enumerate(zip(comps, mods), start=1):
            if not 0 <= c < n:
                raise ValueError(f"component n_{k} = {c} not in [0, {n})")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "moduli", mods)

    @classmethod
    def from_residues(cls, residues: Sequence[int], moduli: Sequence[int]) -> "Character":
        """Build a character, reducing each residue mod its modulus."""
        mods = check_moduli(moduli)
        if len(residues) != len(mods):
            raise ValueError(
                f"character has {len(residues)} components but there are {len(mods)} moduli"
            )
        return cls(tuple(_as_int(r, "residue") % n for r, n in zip(residues, mods)), mods)

    @classmethod
    def trivial(cls, moduli: Sequence[int]) -> "Character":
        mods = check_moduli(moduli)
        return cls((0,) * len(mods), mods)

    @property
    def is_trivial(self) -> bool:
        return not any(self.components)

    @property
    def order(self) -> int:
        return element_order(self.moduli, self.components)

    def scale(self, k: int) -> "Character":
        return Character.from_residues([k * c for c in self.components], self.moduli)

    def __add__(self, other: "Character") -> "Character":
        if self.moduli != other.moduli:
            raise ValueError("characters over different moduli")
        return Character.from_residues(
            [a + b for a, b in zip(self.components, other.components)], self.moduli
        )

    def __str__(self) -> str:
        return ",".join(map(str, self.components))


def parse_character(text: str, moduli: Sequence[int]) -> Character:
    """Parse ``"3,2"`` into a character over ``moduli`` (components must be reduced)."""
    try:
        comps = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse character {text!r}; expected comma-separated integers")
    return Character(comps, tuple(moduli))


def all_characters(moduli: Sequence[int]) -> Iterator[Character]:
    """Every character of ``prod Z_{N_k}`` in lexicographic order."""
    mods = check_moduli(moduli)
    for comps in itertools.product(*(range(n) for n in mods)):
        yield Character(comps, mods)


def char_inverse(chi: Character) -> Character:
    return Character(tuple((n - c) % n for c, n in zip(chi.components, chi.moduli)), chi.moduli)


def pairing_numerator(chi: Character, column: Sequence[int]) -> int:
    """Integer ``t`` in ``[0, L)`` with ``char_pairing(chi, column) == t / L``.

    ``L`` is the lcm of the moduli. Used on hot paths to stay in integers.
    """
    if len(column) != len(chi.moduli):
        raise ValueError(
            f"column has length {len(column)} but the character has {len(chi.moduli)} components"
        )
    big_l = math.lcm(*chi.moduli)
    total = sum(c * r * (big_l // n) for c, r, n in zip(chi.components, column, chi.moduli))
    return total % big_l


def char_pairing(chi: Character, column: Sequence[int]) -> Fraction:
    """Exponent ``a`` in ``[0, 1)`` with ``chi(column) = exp(2 pi i a)``."""
    return Fraction(pairing_numerator(chi, column), math.lcm(*chi.moduli))
