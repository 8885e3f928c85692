"""Enumerate totally ramified Z_2p x (Z_p)^(m-1) families and tabulate their invariants."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterator

from .arith import is_prime
from .certify import certify_family
from .cover import CoveringMatrix
from .higgs import flat_lower_bounds, rank_profile
from .prym import PrymDatum, prym_profile

CSV_COLUMNS = ("p", "m", "counts", "s", "genus", "prym_dim", "flat_total", "verdict")


@dataclass(frozen=True, order=True)
class FamilySignature:
    """Column multiplicities ``(s_1, ..., s_m)`` of a totally ramified matrix.

    Row 1 carries ``Z_2p`` and is distinguished by sigma; rows 2..m carry
    ``Z_p`` and are kept in weakly decreasing order.
    """

    p: int
    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        object.__setattr__(self, "counts", counts)
        if self.m < 1 or len(counts) != self.m:
            raise ValueError(f"need m >= 1 counts, got m = {self.m} and counts {counts}")
        s1, rest = counts[0], counts[1:]
        if s1 < 2 * self.p or s1 % (2 * self.p):
            raise ValueError(f"s_1 = {s1} must be a positive multiple of 2p = {2 * self.p}")
        for k, c in enumerate(rest, start=2):
            if c < self.p or c % self.p:
                raise ValueError(f"s_{k} = {c} must be a positive multiple of p = {self.p}")
        if list(rest) != sorted(rest, reverse=True):
            raise ValueError(f"counts for rows 2..m must be weakly decreasing, got {rest}")

    @property
    def s(self) -> int:
        return sum(self.counts)

    @property
    def moduli(self) -> tuple[int, ...]:
        return (2 * self.p,) + (self.p,) * (self.m - 1)

    def matrix(self) -> CoveringMatrix:
        return CoveringMatrix.from_counts(self.moduli, self.counts)

    def datum(self) -> PrymDatum:
        return PrymDatum.with_default_sigma(self.matrix())


def _tails(p: int, length: int, budget: int, cap: int) -> Iterator[tuple[int, ...]]:
    # Weakly decreasing multiples of p, each <= cap, summing to <= budget.
    if length == 0:
        yield ()
        return
    for c in range(p, min(cap, budget) + 1, p):
        for rest in _tails(p, length - 1, budget - c, c):
            yield (c,) + rest


def enumerate_signatures(p: int, m: int, s_max: int) -> list[FamilySignature]:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 1:
        raise ValueError(f"m = {m} must be >= 1")
    sigs = []
    for s1 in range(2 * p, s_max + 1, 2 * p):
        for tail in _tails(p, m - 1, s_max - s1, s_max):
            sigs.append(FamilySignature(p, m, (s1,) + tail))
    return sorted(sigs, key=lambda sig: sig.counts)


@dataclass(frozen=True)
class ScanRow:
    signature: FamilySignature
    genus: int
    prym_dim: int
    flat_total: int
    verdict: str

    def to_dict(self) -> dict:
        sig = self.signature
        return {
            "p": sig.p,
            "m": sig.m,
            "counts": list(sig.counts),
            "s": sig.s,
            "genus": self.genus,
            "prym_dim": self.prym_dim,
            "flat_total": self.flat_total,
            "verdict": self.verdict,
        }


def scan_signature(sig: FamilySignature) -> ScanRow:
    D = sig.datum()
    profile = prym_profile(D)
    flat = flat_lower_bounds(rank_profile(D))
    return ScanRow(sig, profile.genus_tilde, profile.prym_dimension, flat.total,
                   certify_family(D).verdict)


def scan(p: int, m: int, s_max: int) -> list[ScanRow]:
    return [scan_signature(sig) for sig in enumerate_signatures(p, m, s_max)]


def rows_to_csv(rows: list[ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        d = row.to_dict()
        d["counts"] = ";".join(map(str, d["counts"]))
        writer.writerow([d[c] for c in CSV_COLUMNS])
    return buf.getvalue()
