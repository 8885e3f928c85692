"""The involution sigma, its fixed points, the quotient curve and the Prym part."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Character, Moduli, all_characters, check_moduli, element_order
from .cover import (
    CoveringMatrix,
    IntegralityError,
    eigenspace_table,
    genus_cover,
    group_order,
    require_full_span,
    require_valid,
    span_elements,
)


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class PrymDatum:
    matrix: CoveringMatrix
    sigma: Character

    def __post_init__(self):
        if self.sigma.moduli != self.matrix.moduli:
            raise ValueError(
                f"sigma moduli {self.sigma.moduli} differ from matrix moduli {self.matrix.moduli}"
            )
        if self.sigma.order != 2:
            raise ValueError(f"sigma = ({self.sigma}) has order {self.sigma.order}, not 2")

    @classmethod
    def with_default_sigma(cls, matrix: CoveringMatrix) -> "PrymDatum":
        return cls(matrix, default_sigma(matrix.moduli))

    @property
    def has_default_sigma(self) -> bool:
        n1 = self.matrix.moduli[0]
        return n1 % 2 == 0 and self.sigma == default_sigma(self.matrix.moduli)


UNRAMIFIED = "unramified"
RAMIFIED_TWO = "ramified_two"
RAMIFIED_OTHER = "ramified_other"


@dataclass(frozen=True)
class DoubleCoverClass:
    fixed_point_count: int
    kind: str
    sigma_in_column_spans: bool
    fixed_columns: tuple[int, ...] = ()  # 0-based columns whose stabiliser contains sigma

    def to_dict(self) -> dict:
        return {
            "fixed_point_count": self.fixed_point_count,
            "kind": self.kind,
            "sigma_in_column_spans": self.sigma_in_column_spans,
            "fixed_columns": list(self.fixed_columns),
        }


@dataclass(frozen=True)
class PrymProfile:
    genus_tilde: int
    quotient_genus: int
    prym_dimension: int
    odd_characters: tuple[Character, ...]

    def to_dict(self) -> dict:
        return {
            "genus": self.genus_tilde,
            "quotient_genus": self.quotient_genus,
            "prym_dim": self.prym_dimension,
        }


def default_sigma(moduli: Moduli) -> Character:
    """``(N_1/2, 0, ..., 0)``: the involution negating ``w_1`` only."""
    mods = check_moduli(moduli)
    if mods[0] % 2:
        raise ValueError(f"first modulus N_1 = {mods[0]} is odd, so there is no involution on w_1")
    return Character((mods[0] // 2,) + (0,) * (len(mods) - 1), mods)


def _in_cyclic_span(moduli: Moduli, col: tuple[int, ...], target: tuple[int, ...]) -> bool:
    return any(
        tuple(k * c % n for c, n in zip(col, moduli)) == target
        for k in range(element_order(moduli, col))
    )


def check_prym_datum(D: PrymDatum) -> DoubleCoverClass:
    """Count the fixed points of sigma on a fibre and classify the double cover.

    Over ``z_j`` there are ``d / ord_j`` points, all with stabiliser
    ``<T_j>``; they are fixed by sigma exactly when sigma lies in ``<T_j>``.
    """
    M = D.matrix
    require_valid(M)
    sigma = D.sigma.components
    if sigma not in span_elements(M):
        raise ValueError(f"sigma = ({D.sigma}) is not in the Galois group spanned by the columns")
    d = group_order(M)
    fixed = tuple(j for j, col in enumerate(M.columns) if _in_cyclic_span(M.moduli, col, sigma))
    f = sum(d // element_order(M.moduli, M.columns[j]) for j in fixed)
    kind = UNRAMIFIED if f == 0 else RAMIFIED_TWO if f == 2 else RAMIFIED_OTHER
    return DoubleCoverClass(f, kind, bool(fixed), fixed)


def riemann_hurwitz_quotient(genus_tilde: int, fixed_points: int) -> int:
    """Genus of ``C`` from ``2 g~ - 2 = 2 (2 g_C - 2) + f``."""
    num = 2 * genus_tilde + 2 - fixed_points
    if num % 4:
        raise IntegralityError(
            f"quotient genus (2*{genus_tilde} + 2 - {fixed_points}) / 4 is not an integer"
        )
    return num // 4


def quotient_genus(D: PrymDatum) -> int:
    return riemann_hurwitz_quotient(genus_cover(D.matrix), check_prym_datum(D).fixed_point_count)


def _require_default_sigma(D: PrymDatum) -> None:
    if not D.has_default_sigma:
        raise ValueError(
            f"sigma = ({D.sigma}) is not (N_1/2, 0, ..., 0); only the involution negating w_1 is supported"
        )


def is_odd(chi: Character) -> bool:
    return chi.components[0] % 2 == 1


def odd_characters(D: PrymDatum) -> list[Character]:
    """Characters with odd first component: these carry the sigma-anti-invariant forms."""
    _require_default_sigma(D)
    return [chi for chi in all_characters(D.matrix.moduli) if is_odd(chi)]


def prym_profile(D: PrymDatum) -> PrymProfile:
    _require_default_sigma(D)
    require_full_span(D.matrix)
    g_tilde = genus_cover(D.matrix)
    g_c = quotient_genus(D)
    odd = odd_characters(D)
    table = eigenspace_table(D.matrix)
    odd_sum = sum(table[chi] for chi in odd)
    if odd_sum != g_tilde - g_c:
        raise ConsistencyError(
            f"Prym dimension mismatch: g~ - g_C = {g_tilde - g_c} but the odd-character sum is {odd_sum}"
        )
    return PrymProfile(g_tilde, g_c, odd_sum, tuple(odd))
