"""Exact weighted admissible-walk sums, identity checks and exploration scans."""

__version__ = "0.1.0"

from .numerics import (  # noqa: E402
    ExactRational,
    NotProportionalError,
    SparsePolynomial,
    UnassignedVariableError,
    ZeroDivisorError,
    format_rational,
    parse_rational,
    poly_eval,
    proportionality_constant,
)
from .walks import (  # noqa: E402
    ASCENDING,
    DESCENDING,
    BoundaryVertexError,
    InfiniteClassError,
    PotentialAssignment,
    StepSet,
    Truncation,
    WalkClass,
    enumerate_walks,
    h1,
    h_weight,
    is_admissible,
    vertices,
)
from .sums import (  # noqa: E402
    SumResult,
    abs_sum_positive,
    beta_truncated,
    kappa_abs_sum,
    kappa_sum,
    sum_bruteforce,
    sum_dp,
    sum_polynomial,
    sum_positive_dp,
)
from .identities import (  # noqa: E402
    IdentityReport,
    catalan_zero_check,
    prop1_check,
    prop1_rhs,
    prop2_check,
    prop2_sides,
)
