"""Refined and unrefined Chabauty-Kim loci for the thrice-punctured line.

Submodules: ``padic`` (fixed-precision Q_p), ``polylog`` (finite and p-adic
polylogarithms), ``selmer`` (symbolic localisation maps), ``points``
(S-integral points), ``moebius`` (the S_3 action) and ``verifier``
(theorem drivers and reports).
"""

from ._backend import BACKEND
from .moebius import Moebius, act_on_refinement, apply_moebius, orbit
from .padic import (
    PAdic,
    PAdicDomainError,
    PrecisionError,
    PrecisionPolicy,
    exp_principal,
    iwasawa_log,
    padic_from_integer,
    teichmuller,
)
from .points import (
    KummerVector,
    RationalPoint,
    enumerate_integral_points,
    kummer_coordinates,
    reduce_mod_ell,
    refinement_membership,
)
from .polylog import (
    FpElement,
    FpPoly,
    closed_form_li,
    finite_li_eval,
    finite_li_roots,
    li1,
    modified_polylog_mod_p,
    modified_polylog_series,
    polylog_series,
)
from .selmer import (
    Cusp,
    LocalisationMap,
    RefinementCondition,
    build_localisation,
    restrict_refinement,
    selmer_dimension,
    specialize_single_letter,
    vanishing_coordinates,
)
from .verifier import (
    LocusResult,
    VerificationReport,
    depth1_locus,
    emit_report,
    refined_locus_sigma1_s2,
    verify_refined_kim,
    verify_unrefined_empty,
)

__version__ = "0.1.0"
