"""Symmetric sequence spaces, boundary-functional approximation and scattered trees."""
from .errors import (
    BracketError,
    HorizonError,
    NumericError,
    PreconditionError,
    SymbaError,
    ValidationError,
)
from .finvec import FinVec, format_scalar, parse_scalar
from .orlicz import OrliczFn
from .spaces import (
    ExponentSeq,
    SpaceSpec,
    WeightSeq,
    dual_norm,
    fundamental_functions,
    lorentz_dual_norm,
    lorentz_predual_norm,
    luxemburg_norm,
    modular_value,
    norm,
    orlicz_inverse,
)
from .approx import (
    RangeProfile,
    RhoProvider,
    ThetaBreakdown,
    convex_weights,
    g,
    h,
    j,
    omega,
    range_profile,
    reconstruct,
    rho,
    tail_bound,
    theta,
)
from .conditions import Policy, SeriesDiagnostic, builtin, classify, leung_M, series
from .ordinals import Ordinal, parse_ordinal, q_of
from .trees import (
    TreeNode,
    WedgeNbhd,
    cb_rank,
    children_sample,
    dirac_transport,
    is_isolated_in_levelset,
    is_member,
    scattered_height,
    wedge_contains,
)

__version__ = "0.1.0"
