"""Covering matrices of abelian covers of the projective line and their invariants.

A cover is described by an ``m x s`` integer matrix whose ``j``-th column is
the local monodromy at the branch point ``z_j``, read in
``Z_{N_1} x ... x Z_{N_m}`` (one modulus per row). The Galois group is the
subgroup generated by the columns.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .arith import (
    Character,
    Moduli,
    _as_int,
    all_characters,
    char_pairing,
    check_moduli,
    element_order,
    frac,
    pairing_numerator,
)

# int64 headroom for the vectorised character table.
_INT64_SAFE = 2**62


class InvalidCoveringError(ValueError):
    """A covering matrix violates one of its invariants."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional."""


@dataclass(frozen=True)
class CoveringMatrix:
    """Local monodromy data, stored column by column.

    Entries are reduced mod the modulus of their row on construction.
    Structural problems (wrong column length, bad moduli) raise immediately;
    the geometric conditions are reported by :func:`validate`.
    """

    moduli: Moduli
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mods = check_moduli(self.moduli)
        cols = []
        for j, col in enumerate(self.columns, start=1):
            col = tuple(col)
            if len(col) != len(mods):
                raise InvalidCoveringError(
                    f"column {j} has length {len(col)}, expected {len(mods)} (one entry per modulus)"
                )
            cols.append(tuple(_as_int(r, "matrix entry") % n for r, n in zip(col, mods)))
        object.__setattr__(self, "moduli", mods)
        object.__setattr__(self, "columns", tuple(cols))

    @property
    def m(self) -> int:
        return len(self.moduli)

    @property
    def s(self) -> int:
        return len(self.columns)

    def row(self, k: int) -> tuple[int, ...]:
        return tuple(col[k] for col in self.columns)

    @classmethod
    def from_rows(cls, moduli: Sequence[int], rows: Sequence[Sequence[int]]) -> "CoveringMatrix":
        if len(rows) != len(moduli):
            raise InvalidCoveringError(f"{len(rows)} rows given for {len(moduli)} moduli")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise InvalidCoveringError(f"rows have different lengths {sorted(widths)}")
        return cls(tuple(moduli), tuple(zip(*rows)))

    @classmethod
    def from_counts(cls, moduli: Sequence[int], counts: Sequence[int]) -> "CoveringMatrix":
        """Totally ramified matrix: ``counts[k]`` copies of the unit column ``e_k``."""
        mods = check_moduli(moduli)
        if len(counts) != len(mods):
            raise InvalidCoveringError(f"{len(counts)} counts given for {len(mods)} rows")
        cols = []
        for k, c in enumerate(counts):
            if c < 0:
                raise InvalidCoveringError(f"count for row {k + 1} is negative")
            unit = tuple(1 if i == k else 0 for i in range(len(mods)))
            cols.extend([unit] * c)
        return cls(mods, tuple(cols))

    def to_dict(self) -> dict:
        return {"moduli": list(self.moduli), "columns": [list(c) for c in self.columns]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "CoveringMatrix":
        """Accepts ``{"moduli", "columns"}``, optionally nested under ``"family"``."""
        if "moduli" not in data and isinstance(data.get("family"), Mapping):
            data = data["family"]
        try:
            moduli, columns = data["moduli"], data["columns"]
        except KeyError as exc:
            raise InvalidCoveringError(f"covering matrix JSON is missing the {exc.args[0]!r} field")
        if not isinstance(moduli, list) or not isinstance(columns, list):
            raise InvalidCoveringError('"moduli" and "columns" must be JSON arrays')
        if not all(isinstance(c, list) for c in columns):
            raise InvalidCoveringError('every entry of "columns" must be an array')
        try:
            return cls(tuple(moduli), tuple(tuple(c) for c in columns))
        except TypeError as exc:
            raise InvalidCoveringError(str(exc))

    @classmethod
    def load(cls, path: str | Path) -> "CoveringMatrix":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    totally_ramified: bool
    group_is_full_product: bool
    messages: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "totally_ramified": self.totally_ramified,
            "group_is_full_product": self.group_is_full_product,
            "messages": list(self.messages),
        }


@lru_cache(maxsize=512)
def _span_array(M: CoveringMatrix) -> np.ndarray:
    # Grow the subgroup one cyclic generator at a time: S <- S + <T_j>.
    # Elements are tracked by their mixed-radix code (C order, last row fastest).
    mods = np.array(M.moduli, dtype=np.int64)
    strides = np.array([math.prod(M.moduli[k + 1:]) for k in range(M.m)], dtype=np.int64)
    elems = np.zeros((1, M.m), dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    for col in sorted(set(M.columns)):
        if not any(col) or np.dot(col, strides) in codes:
            continue
        order = element_order(M.moduli, col)
        multiples = (np.arange(order, dtype=np.int64)[:, None] * np.array(col)[None, :]) % mods
        sums = ((elems[:, None, :] + multiples[None, :, :]) % mods).reshape(-1, M.m)
        codes = np.unique(sums @ strides)
        elems = np.stack(np.unravel_index(codes, M.moduli), axis=1).astype(np.int64)
    elems.setflags(write=False)
    return elems


def span_elements(M: CoveringMatrix) -> frozenset[tuple[int, ...]]:
    """All elements of the subgroup generated by the columns."""
    return frozenset(tuple(int(x) for x in row) for row in _span_array(M))


def _is_totally_ramified(M: CoveringMatrix) -> bool:
    return all(sorted(col) == [0] * (M.m - 1) + [1] for col in M.columns)


def validate(M: CoveringMatrix) -> ValidationReport:
    msgs = []
    if M.s < 3:
        msgs.append(f"branch_count: s = {M.s} branch points, need at least 3")
    for k, n in enumerate(M.moduli):
        total = sum(M.row(k))
        if total % n:
            msgs.append(
                f"column_sum: row {k + 1} sums to {total} = {total % n} mod {n}, must be 0 "
                "(cover would branch over infinity)"
            )
    for j, col in enumerate(M.columns, start=1):
        if not any(col):
            msgs.append(f"nonzero_column: column {j} is zero, so z_{j} is not a branch point")
    full = len(_span_array(M)) == math.prod(M.moduli)
    return ValidationReport(
        valid=not msgs,
        totally_ramified=_is_totally_ramified(M),
        group_is_full_product=full,
        messages=tuple(msgs),
    )


def require_valid(M: CoveringMatrix) -> None:
    report = validate(M)
    if not report.valid:
        raise InvalidCoveringError("; ".join(report.messages))


def require_full_span(M: CoveringMatrix) -> None:
    require_valid(M)
    if len(_span_array(M)) != math.prod(M.moduli):
        raise InvalidCoveringError(
            f"span_not_full: columns generate a subgroup of order {group_order(M)}, "
            f"not the full product of order {math.prod(M.moduli)}"
        )


def group_order(M: CoveringMatrix) -> int:
    """Order of the Galois group, i.e. the degree of the cover."""
    require_valid(M)
    return len(_span_array(M))


def ramification_order(M: CoveringMatrix, j: int) -> int:
    """Order of the local monodromy at branch point ``j`` (0-based)."""
    require_valid(M)
    return element_order(M.moduli, M.columns[j])


def genus_cover(M: CoveringMatrix) -> int:
    """Genus of the cover by Riemann-Hurwitz. Raises if it is not an integer."""
    require_valid(M)
    d = len(_span_array(M))
    inv_orders = sum(Fraction(1, element_order(M.moduli, col)) for col in M.columns)
    g = 1 + d * (Fraction(M.s - 2, 2) - inv_orders / 2)
    if g.denominator != 1:
        raise IntegralityError(f"genus formula gave the non-integer {g}")
    return int(g)


@lru_cache(maxsize=512)
def _annihilator(M: CoveringMatrix) -> tuple[Character, ...]:
    # Characters trivial on every column, i.e. trivial on the whole span.
    return tuple(
        chi for chi in all_characters(M.moduli)
        if all(pairing_numerator(chi, col) == 0 for col in M.columns)
    )


def canonical_character(M: CoveringMatrix, chi: Character) -> Character:
    """Lexicographically smallest character with the same restriction to the span as ``chi``."""
    return min(chi + a for a in _annihilator(M))


def span_characters(M: CoveringMatrix) -> list[Character]:
    """One canonical representative per character of the Galois group."""
    require_valid(M)
    return sorted({canonical_character(M, chi) for chi in all_characters(M.moduli)})


def _check_character(M: CoveringMatrix, chi: Character) -> None:
    if chi.moduli != M.moduli:
        raise ValueError(f"character moduli {chi.moduli} differ from matrix moduli {M.moduli}")
    if len(_span_array(M)) != math.prod(M.moduli):
        canon = canonical_character(M, chi)
        if canon != chi:
            raise ValueError(
                f"character ({chi}) is not a canonical character of the Galois group; "
                f"its restriction to the column span is represented by ({canon})"
            )


def eigenspace_dim(M: CoveringMatrix, chi: Character) -> int:
    """Dimension of the ``chi``-eigenspace of holomorphic 1-forms."""
    require_valid(M)
    _check_character(M, chi)
    exps = [char_pairing(chi, col) for col in M.columns]
    if not any(exps):
        return 0
    d = -1 + sum(frac(-a) for a in exps)
    if d.denominator != 1 or d < 0:
        raise IntegralityError(f"eigenspace dimension for ({chi}) came out as {d}")
    return int(d)


@dataclass(frozen=True)
class EigenspaceTable:
    moduli: Moduli
    dims: Mapping[tuple[int, ...], int] = field(repr=False)

    def __getitem__(self, chi: Character | tuple[int, ...]) -> int:
        key = chi.components if isinstance(chi, Character) else tuple(chi)
        return self.dims[key]

    def __len__(self) -> int:
        return len(self.dims)

    def items(self):
        for comps, d in self.dims.items():
            yield Character(comps, self.moduli), d

    def total(self) -> int:
        return sum(self.dims.values())


def _pairing_matrix(M: CoveringMatrix) -> tuple[np.ndarray, np.ndarray, int]:
    """(characters, numerators, L): ``numerators[c, j] / L`` is ``a_j`` of character ``c``."""
    big_l = math.lcm(*M.moduli)
    if M.m * max(M.moduli) * big_l >= _INT64_SAFE:
        raise OverflowError(
            f"moduli {M.moduli} too large for the int64 character table (lcm {big_l})"
        )
    weights = np.array([big_l // n for n in M.moduli], dtype=np.int64)
    cols = np.array(M.columns, dtype=np.int64).reshape(M.s, M.m).T * weights[:, None]
    chars = np.indices(M.moduli, dtype=np.int64).reshape(M.m, -1).T
    return chars, (chars @ cols) % big_l, big_l


@lru_cache(maxsize=256)
def _table(M: CoveringMatrix) -> EigenspaceTable:
    chars, nums, big_l = _pairing_matrix(M)
    neg_total = ((-nums) % big_l).sum(axis=1)
    if np.any(neg_total % big_l):
        raise IntegralityError("eigenspace dimension sum is not integral")
    dims = neg_total // big_l - 1
    dims[0] = 0  # trivial character sits first in lexicographic order
    if np.any(dims < 0):
        raise IntegralityError("negative eigenspace dimension")
    keys = [tuple(int(x) for x in row) for row in chars]
    return EigenspaceTable(M.moduli, MappingProxyType(dict(zip(keys, map(int, dims)))))


def eigenspace_table(M: CoveringMatrix) -> EigenspaceTable:
    """Eigenspace dimensions for every character of a full-span cover."""
    require_full_span(M)
    return _table(M)


@dataclass(frozen=True)
class EigenformDescriptor:
    """The 1-form ``z^nu * prod_k w_k^{n_k} * prod_j (z - z_j)^{e_j} dz``."""

    character: Character
    nu: int
    floor_exponents: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "character": list(self.character.components),
            "nu": self.nu,
            "floor_exponents": list(self.floor_exponents),
        }

    def formula(self) -> str:
        parts = [f"z^{self.nu}"]
        parts += [f"w{k}^{n}" for k, n in enumerate(self.character.components, 1) if n]
        parts += [f"(z-z{j})^{e}" for j, e in enumerate(self.floor_exponents, 1) if e]
        return " * ".join(parts) + " dz"


def eigenform_basis(M: CoveringMatrix, chi: Character) -> list[EigenformDescriptor]:
    if chi.is_trivial:
        raise ValueError("the trivial character has no eigenforms (quotient is the projective line)")
    d = eigenspace_dim(M, chi)
    floors = tuple(math.floor(-char_pairing(chi, col)) for col in M.columns)
    return [EigenformDescriptor(chi, nu, floors) for nu in range(d)]
