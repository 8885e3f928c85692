"""Exact invariants of abelian covers of the projective line and Prym obstruction certificates."""

from .arith import Character, char_inverse, char_pairing, frac
from .certify import ObstructionCertificate, certify_family, closed_form_report, verify_certificate
from .cover import (
    CoveringMatrix,
    InvalidCoveringError,
    eigenform_basis,
    eigenspace_dim,
    eigenspace_table,
    genus_cover,
    group_order,
    ramification_order,
    validate,
)
from .enumeration import FamilySignature, enumerate_signatures, scan
from .higgs import (
    fiber_line_bundle_degree,
    flat_lower_bounds,
    galois_orbits,
    intersection_number,
    rank_profile,
)
from .prym import PrymDatum, check_prym_datum, default_sigma, odd_characters, prym_profile, quotient_genus

__version__ = "0.1.0"
