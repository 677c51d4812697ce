"""Concavity of combinations of elementary symmetric polynomials.

Exact rational arithmetic decides every verdict that matters; floating point
is only used to search, and whatever it finds is re-checked exactly.
"""

from .concave import (
    ConcavityVerdict,
    closedform_det,
    concavity_matrix,
    concavity_scan,
    determinant_check,
    exact_concavity_det,
    in_X,
    in_Xi,
    marcus_lopes_check,
    p2_certificate,
    sample_gamma,
    set_membership,
)
from .hyperb import (
    HomogeneousSpec,
    TrialReport,
    conjecture_trial,
    hyperbolicity_probe,
    pascinde_lift,
    pi_p_closed,
    pi_p_direct,
    restrict_to_line,
    s_np_eval,
    s_np_spec,
    sigma_spec,
)
from .identities import run_identity_suite
from .polyexact import (
    RootSet,
    SturmChain,
    UniPoly,
    cardan_reduce,
    complex_roots,
    convolution_sum,
    discriminant_small,
    from_roots,
    is_real_rooted,
    parse_poly,
    reverse,
    squarefree_part,
    sturm_chain,
    sturm_real_root_count,
)
from .rootcrit import (
    CriterionReport,
    battery,
    hermite_signature,
    kurtz,
    log_concave,
    nonpositive_on,
    total_positivity_truncated,
)
from .symfun import (
    CoeffVec,
    bar_f,
    f_derivatives,
    f_value,
    in_gamma,
    merge_sigma_check,
    reduce_to_mu,
    shift_expand,
    sigma,
    sigma_all,
    sigma_gradient,
)

__all__ = [
    "ConcavityVerdict",
    "closedform_det",
    "concavity_matrix",
    "concavity_scan",
    "determinant_check",
    "exact_concavity_det",
    "in_X",
    "in_Xi",
    "marcus_lopes_check",
    "p2_certificate",
    "sample_gamma",
    "set_membership",
    "HomogeneousSpec",
    "TrialReport",
    "conjecture_trial",
    "hyperbolicity_probe",
    "pascinde_lift",
    "pi_p_closed",
    "pi_p_direct",
    "restrict_to_line",
    "s_np_eval",
    "s_np_spec",
    "sigma_spec",
    "run_identity_suite",
    "RootSet",
    "SturmChain",
    "UniPoly",
    "cardan_reduce",
    "complex_roots",
    "convolution_sum",
    "discriminant_small",
    "from_roots",
    "is_real_rooted",
    "parse_poly",
    "reverse",
    "squarefree_part",
    "sturm_chain",
    "sturm_real_root_count",
    "CriterionReport",
    "battery",
    "hermite_signature",
    "kurtz",
    "log_concave",
    "nonpositive_on",
    "total_positivity_truncated",
    "CoeffVec",
    "bar_f",
    "f_derivatives",
    "f_value",
    "in_gamma",
    "merge_sigma_check",
    "reduce_to_mu",
    "shift_expand",
    "sigma",
    "sigma_all",
    "sigma_gradient",
]

__version__ = "0.1.0"
