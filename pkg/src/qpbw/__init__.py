"""Exact chain-level computations for quotients of PBW algebras and their
quantum symmetric associated graded algebras."""

from .qscalar import LaurentScalar, canonical_q, parse_scalar
from .presentations import (
    AlgebraElement,
    AlgebraMode,
    Presentation,
    associated_graded,
    check_braided_central,
    check_confluence,
    multiply,
    normal_form,
    validate_presentation,
)
from .resolution import ResolutionElement, differential, homotopy, verify_complex, verify_homotopy
from .cohomology import CohomologyMonomial, compose, dual_pairing, eta, hilbert_coefficients, xi
from .cocycles import F_map, bar_differential, zeta, zeta_tilde
from .fileformat import parse_presentation_file, parse_presentation_text

__all__ = [
    "AlgebraElement",
    "AlgebraMode",
    "CohomologyMonomial",
    "F_map",
    "LaurentScalar",
    "Presentation",
    "ResolutionElement",
    "associated_graded",
    "bar_differential",
    "canonical_q",
    "check_braided_central",
    "check_confluence",
    "compose",
    "differential",
    "dual_pairing",
    "eta",
    "hilbert_coefficients",
    "homotopy",
    "multiply",
    "normal_form",
    "parse_presentation_file",
    "parse_presentation_text",
    "parse_scalar",
    "validate_presentation",
    "verify_complex",
    "verify_homotopy",
    "xi",
    "zeta",
    "zeta_tilde",
]
