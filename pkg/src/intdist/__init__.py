"""Skewed sampling distributions for intensive quantities.

A library and CLI for the family of laws describing a ratio-type property
measured on random aliquots of a finite lot: the bounded density on (0, u),
its open-ended right-skewed limit, the left-skewed mirror, and the Gaussian
middle regime.  Includes closed-form and maximum-likelihood estimators,
histogram fitting, PP-plot goodness of fit, exact discrete oracles, a CV
versus concentration model, and a log-normal similarity report.
"""

from .distributions import (
    AdimensionalParams,
    CdfTable,
    GenericParams,
    HomogeneousParams,
    LikelyParams,
    LogNormalParams,
    MirroredLogNormalParams,
    Moments,
    NormalParams,
    UnlikelyHomogeneousParams,
    UnlikelyParams,
    cdf,
    cdf_many,
    central_moment_numeric,
    cf_unlikely,
    from_adimensional,
    log_pdf,
    mgf_unlikely,
    moments_closed,
    pdf,
    quantile,
    support,
)
from .errors import (
    DegenerateDataError,
    DomainError,
    IntdistError,
    NonIdentifiableError,
    NumericError,
    UnsupportedModelError,
)
from .estimation import (
    Dataset,
    FitReport,
    HistFitResult,
    estimate_homogeneous,
    estimate_likely_closed,
    estimate_lognormal,
    estimate_mirrored_lognormal,
    estimate_normal,
    estimate_unlikely_closed,
    histfit,
    mle_unlikely,
)
from .goodness_of_fit import (
    Histogram,
    PPSeries,
    build_histogram,
    pp_series,
    r_squared_identity,
    r_squared_pp,
)
from .discrete import (
    BatchSpec,
    ContinuityTable,
    TrialSpec,
    binomial_pmf_exact,
    continuity_check,
    demoivre_approx,
    poisson_approx,
    poisson_pmf_exact,
)
from .horwitz import CvPoint, cv_theoretical, hall_selinger_n, horwitz_cv, horwitz_table
from .lognormal_bridge import (
    ClosenessReport,
    GapPoint,
    closeness_report,
    gap,
    series_lhs,
    series_rhs,
)
from .sampling import (
    SampleRequest,
    sample,
    sample_inverse_cdf,
    sample_unlikely_reciprocal,
)

__version__ = "0.1.0"

__all__ = [
    "AdimensionalParams",
    "BatchSpec",
    "CdfTable",
    "ClosenessReport",
    "ContinuityTable",
    "CvPoint",
    "Dataset",
    "DegenerateDataError",
    "DomainError",
    "FitReport",
    "GapPoint",
    "GenericParams",
    "HistFitResult",
    "Histogram",
    "HomogeneousParams",
    "IntdistError",
    "LikelyParams",
    "LogNormalParams",
    "MirroredLogNormalParams",
    "Moments",
    "NonIdentifiableError",
    "NormalParams",
    "NumericError",
    "PPSeries",
    "SampleRequest",
    "TrialSpec",
    "UnlikelyHomogeneousParams",
    "UnlikelyParams",
    "UnsupportedModelError",
    "binomial_pmf_exact",
    "build_histogram",
    "cdf",
    "cdf_many",
    "central_moment_numeric",
    "cf_unlikely",
    "closeness_report",
    "continuity_check",
    "cv_theoretical",
    "demoivre_approx",
    "estimate_homogeneous",
    "estimate_likely_closed",
    "estimate_lognormal",
    "estimate_mirrored_lognormal",
    "estimate_normal",
    "estimate_unlikely_closed",
    "from_adimensional",
    "gap",
    "hall_selinger_n",
    "histfit",
    "horwitz_cv",
    "horwitz_table",
    "log_pdf",
    "mgf_unlikely",
    "mle_unlikely",
    "moments_closed",
    "pdf",
    "poisson_approx",
    "poisson_pmf_exact",
    "pp_series",
    "quantile",
    "r_squared_identity",
    "r_squared_pp",
    "sample",
    "sample_inverse_cdf",
    "sample_unlikely_reciprocal",
    "series_lhs",
    "series_rhs",
    "support",
]
