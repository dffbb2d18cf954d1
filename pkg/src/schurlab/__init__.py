"""Exact Schur polynomials, determinant expansions of entrywise maps on
rank-one perturbations, and necessary-condition checks for positivity
preservers."""

from .calculus import FormalSeriesCalculus, NumericCalculus, calculus_laws_check
from .detident import (
    SeriesFunction,
    cauchy_binet_series,
    delta_series,
    det_ring,
    phorn_derivative,
    polynomial,
    schlosser_rhs,
    tsymm_rhs,
    verify_cauchy,
    verify_frobenius,
    verify_phorn,
    verify_tsymm,
)
from .findiff import finite_diff_derivs
from .preserver import (
    TestFamily,
    admissible_characterize,
    fh_predict,
    hl_conclusion_check,
    hl_hypothesis_scan,
    is_admissible,
    maclaurin_sign_check,
)
from .profile import DerivProfile
from .psd import is_psd_exact, is_psd_numeric
from .ring import MultiPoly, RingMatrix, TruncSeries
from .symmetric import PartitionTuple, schur_bialternant, schur_tableaux

__version__ = "0.1.0"
