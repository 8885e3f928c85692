"""Obstruction certificates for non-compact Shimura curves in the Prym locus.

A certificate is an ordered list of steps. Numeric steps carry their inputs
and the computed value, so :func:`verify_certificate` can re-check every
inequality from the JSON alone. The two geometric steps that cannot be decided
from the matrix are recorded with ``passed = "assumed"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .arith import Character, char_inverse, is_prime
from .cover import CoveringMatrix, eigenspace_table, genus_cover, validate
from .higgs import flat_lower_bounds, intersection_number, rank_profile
from .prym import PrymDatum, PrymProfile, prym_profile

ASSUMED = "assumed"

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not_applicable"

FLAT_THRESHOLD = 3
PRYM_THRESHOLD = 8
GENUS_THRESHOLD = 16
DEGREE_LOWER_BOUND = 3


@dataclass(frozen=True)
class CertificateStep:
    id: str
    statement: str
    anchor: str
    inputs: Mapping[str, Any]
    computed: int | Fraction | None
    passed: bool | str

    def to_dict(self) -> dict:
        computed = self.computed
        if isinstance(computed, Fraction):
            computed = str(computed) if computed.denominator != 1 else int(computed)
        return {
            "id": self.id,
            "statement": self.statement,
            "anchor": self.anchor,
            "inputs": dict(self.inputs),
            "computed": computed,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ObstructionCertificate:
    family: PrymDatum
    profile: PrymProfile | None
    steps: tuple[CertificateStep, ...]
    verdict: str

    def step(self, step_id: str) -> CertificateStep:
        for st in self.steps:
            if st.id == step_id:
                return st
        raise KeyError(step_id)

    def to_dict(self) -> dict:
        family = self.family.matrix.to_dict()
        family["sigma"] = list(self.family.sigma.components)
        return {
            "family": family,
            "profile": self.profile.to_dict() if self.profile else None,
            "steps": [st.to_dict() for st in self.steps],
            "verdict": self.verdict,
        }


def _applicability(D: PrymDatum) -> CertificateStep:
    M = D.matrix
    report = validate(M)
    n1 = M.moduli[0]
    p = n1 // 2 if n1 % 2 == 0 else None
    shape_ok = p is not None and all(n == p for n in M.moduli[1:])
    inputs = {
        "first_modulus": n1,
        "p": p,
        "m": M.m,
        "valid": report.valid,
        "totally_ramified": report.totally_ramified,
        "moduli_shape_2p_p": shape_ok,
        "p_prime": p is not None and is_prime(p),
        "p_at_least_5": p is not None and p >= 5,
        "sigma_default": D.has_default_sigma,
        "full_span": report.group_is_full_product,
    }
    passed = all(v for k, v in inputs.items() if isinstance(v, bool))
    return CertificateStep(
        "S1",
        "matrix is totally ramified with moduli (2p, p, ..., p), p prime >= 5, "
        "full Galois group and sigma = (p, 0, ..., 0)",
        "totally ramified Z_2p x (Z_p)^(m-1) families, p >= 5",
        inputs,
        p,
        passed,
    )


def _rank_gap(D: PrymDatum, ranks) -> tuple[CertificateStep, Character | None]:
    n1 = D.matrix.moduli[0]
    candidates = []
    for chi in ranks.ranks:
        gap = ranks.e10(chi) - ranks.e10(char_inverse(chi))
        dual_lift = char_inverse(chi).components[0]
        if gap > 0 and 2 * dual_lift >= n1:
            candidates.append((-gap, chi))
    inputs: dict[str, Any] = {"first_modulus": n1, "candidates": len(candidates)}
    if not candidates:
        return CertificateStep(
            "S2",
            "some odd chi has e10(chi) > e10(chi^-1) with the first coordinate of chi^-1 "
            "lifting to at least N_1/2",
            "positive rank gap forces a nonzero flat summand",
            inputs,
            0,
            False,
        ), None
    _, witness = min(candidates)
    dual = char_inverse(witness)
    inputs.update(
        witness=str(witness),
        e10=ranks.e10(witness),
        e10_dual=ranks.e10(dual),
        dual=str(dual),
        dual_first_lift=dual.components[0],
    )
    gap = inputs["e10"] - inputs["e10_dual"]
    return CertificateStep(
        "S2",
        "some odd chi has e10(chi) > e10(chi^-1) with the first coordinate of chi^-1 "
        "lifting to at least N_1/2",
        "positive rank gap forces a nonzero flat summand",
        inputs,
        gap,
        True,
    ), witness


def _flat_rank(bounds) -> CertificateStep:
    positive = {str(chi): b for chi, b in bounds.positive().items()}
    return CertificateStep(
        "S3",
        f"total flat lower bound sum_chi max(0, e10(chi) - e10(chi^-1)) >= {FLAT_THRESHOLD}",
        "rank F10 of the flat part exceeds 2",
        {"threshold": FLAT_THRESHOLD, "bounds": positive},
        bounds.total,
        bounds.total >= FLAT_THRESHOLD,
    )


def _second_fibration(D: PrymDatum, bounds, witness: Character | None) -> CertificateStep:
    M = D.matrix
    inputs: dict[str, Any] = {"base_genus_lower_bound": bounds.total}
    if witness is not None:
        dual = char_inverse(witness)
        inputs["witness_dual"] = str(dual)
        inputs["witness_dual_self_intersection"] = intersection_number(M, dual, dual)
    duals = sorted(char_inverse(chi) for chi in bounds.positive())
    inputs["negative_intersection_pairs"] = sum(
        1
        for i, a in enumerate(duals)
        for b in duals[i:]
        if intersection_number(M, a, b) < 0
    )
    return CertificateStep(
        "S4",
        "after base change there is a second fibration onto a curve B' with g(B') >= rk F10",
        "negative fibre intersection makes the flat pieces trivial and yields a fibration "
        "pulling back their forms",
        inputs,
        None,
        ASSUMED,
    )


def _degree_bound() -> CertificateStep:
    return CertificateStep(
        "S5",
        f"the restriction of the second fibration to a fibre has degree >= {DEGREE_LOWER_BOUND}",
        "fibres are non-isotrivial and not double covers of a fixed curve",
        {"degree_lower_bound": DEGREE_LOWER_BOUND},
        None,
        ASSUMED,
    )


def _threshold(profile: PrymProfile) -> CertificateStep:
    g_tilde, g_p = profile.genus_tilde, profile.prym_dimension
    genus_met = g_tilde >= GENUS_THRESHOLD
    prym_met = g_p >= PRYM_THRESHOLD
    return CertificateStep(
        "S6",
        f"Prym dimension g_P = g~ - g_C >= {PRYM_THRESHOLD} "
        f"(g~ >= {GENUS_THRESHOLD} recorded alongside)",
        "Riemann-Hurwitz for the degree >= 3 map onto B' contradicts the rank of the "
        "flat part at a degenerate fibre",
        {
            "genus": g_tilde,
            "quotient_genus": profile.quotient_genus,
            "prym_dim": g_p,
            "prym_threshold": PRYM_THRESHOLD,
            "genus_threshold": GENUS_THRESHOLD,
            "genus_threshold_met": genus_met,
            "thresholds_agree": genus_met == prym_met,
        },
        g_p,
        prym_met,
    )


def certify_family(D: PrymDatum) -> ObstructionCertificate:
    """Run the exclusion argument on a concrete family and return its certificate."""
    s1 = _applicability(D)
    steps = [s1]
    profile = None
    report = validate(D.matrix)
    if report.valid and report.group_is_full_product and D.has_default_sigma:
        profile = prym_profile(D)
        ranks = rank_profile(D)
        bounds = flat_lower_bounds(ranks)
        s2, witness = _rank_gap(D, ranks)
        steps += [s2, _flat_rank(bounds), _second_fibration(D, bounds, witness),
                  _degree_bound(), _threshold(profile)]
    if not s1.passed:
        verdict = NOT_APPLICABLE
    elif all(st.passed is True for st in steps if st.passed != ASSUMED):
        verdict = OBSTRUCTED
    else:
        verdict = INCONCLUSIVE
    return ObstructionCertificate(D, profile, tuple(steps), verdict)


def verify_certificate(data: Mapping) -> list[str]:
    """Re-check a certificate dict from its embedded numbers. Returns the problems found."""
    problems = []
    steps = {st["id"]: st for st in data.get("steps", [])}
    for sid, st in steps.items():
        if st["passed"] == ASSUMED and sid not in ("S4", "S5"):
            problems.append(f"{sid} is marked assumed but only S4/S5 may be")
    if "S1" not in steps:
        return problems + ["S1 missing"]
    verdict = data.get("verdict")
    if not steps["S1"]["passed"]:
        if verdict != NOT_APPLICABLE:
            problems.append(f"S1 failed but verdict is {verdict!r}")
        return problems
    missing = [sid for sid in ("S2", "S3", "S4", "S5", "S6") if sid not in steps]
    if missing:
        return problems + [f"steps missing: {missing}"]

    s2 = steps["S2"]
    if s2["passed"]:
        inp = s2["inputs"]
        gap = inp["e10"] - inp["e10_dual"]
        if gap != s2["computed"] or gap <= 0 or 2 * inp["dual_first_lift"] < inp["first_modulus"]:
            problems.append("S2 inputs do not support a positive gap at an admissible witness")
    s3 = steps["S3"]
    total = sum(s3["inputs"]["bounds"].values())
    if total != s3["computed"]:
        problems.append(f"S3 bounds sum to {total}, certificate says {s3['computed']}")
    if bool(total >= s3["inputs"]["threshold"]) != s3["passed"]:
        problems.append("S3 passed flag disagrees with its inequality")
    s6 = steps["S6"]
    inp = s6["inputs"]
    if inp["prym_dim"] != inp["genus"] - inp["quotient_genus"]:
        problems.append("S6 prym_dim != genus - quotient_genus")
    if bool(inp["prym_dim"] >= inp["prym_threshold"]) != s6["passed"]:
        problems.append("S6 passed flag disagrees with its inequality")
    prof = data.get("profile") or {}
    if (prof.get("genus"), prof.get("quotient_genus"), prof.get("prym_dim")) != (
        inp["genus"], inp["quotient_genus"], inp["prym_dim"]
    ):
        problems.append("profile disagrees with S6 inputs")

    numeric_ok = all(steps[sid]["passed"] is True for sid in ("S1", "S2", "S3", "S6"))
    expected = OBSTRUCTED if numeric_ok else INCONCLUSIVE
    if verdict != expected:
        problems.append(f"verdict {verdict!r} but the steps imply {expected!r}")
    return problems


def closed_form_report(p: int, s: int) -> dict:
    """Compare the totally ramified cyclic closed forms with the general formulas.

    The cover is ``w^{2p} = prod_j (z - z_j)``, i.e. the all-ones ``1 x s``
    matrix mod ``N = 2p``.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    n = 2 * p
    if s <= 0 or s % n:
        raise ValueError(f"s = {s} is not a positive multiple of 2p = {n}; column sums cannot vanish")
    M = CoveringMatrix((n,), ((1,),) * s)
    table = eigenspace_table(M)
    closed_dims = {k: -1 + s * (1 - Fraction(k, n)) for k in range(1, n)}
    general_dims = {k: table[(k,)] for k in range(1, n)}
    closed_genus = (-1 + Fraction(s, 2)) * (n - 1)
    general_genus = genus_cover(M)
    mismatches = [f"d_{k}" for k in range(1, n) if closed_dims[k] != general_dims[k]]
    if closed_genus != general_genus:
        mismatches.append("genus")
    return {
        "p": p,
        "N": n,
        "s": s,
        "closed_form": {
            "dims": {str(k): int(v) if v.denominator == 1 else str(v) for k, v in closed_dims.items()},
            "genus": int(closed_genus) if closed_genus.denominator == 1 else str(closed_genus),
        },
        "general": {"dims": {str(k): v for k, v in general_dims.items()}, "genus": general_genus},
        "match": not mismatches,
        "mismatches": mismatches,
    }
