"""Skewness tests for five-number summaries, with mean/SD recovery and pooling.

Given only a sample size and the reported (partial) five-number summary, the
package decides whether a study arm's underlying data are significantly
skewed, converts not-rejected summaries back to a mean and SD, and pools
mean differences across studies under fixed-effect and random-effects models.
"""

from .critical import approx_critical, asymptotic_critical, critical_value, mc_critical, table_critical
from .density import NullDensityQuery, null_cdf_upper, null_density, null_quantile
from .distributions import (
    DistributionSpec,
    HalfNormal,
    LogNormal,
    MixtureNormal,
    Normal,
    SkewNormal,
    sample,
)
from .errors import (
    AsymptoticUnavailableError,
    DegenerateRangeError,
    IngestError,
    InsufficientReplicationsError,
    InvalidArgumentError,
    InvalidSummaryError,
    NoStudiesError,
    NotApplicableError,
    OutOfTableRangeError,
    SkewsumError,
    TestNotApplicableError,
    UnsupportedAlphaError,
)
from .estimators import MomentEstimate, estimate_mean, estimate_moments, estimate_sd
from .kernels import backend_name, sample_summaries
from .meta import (
    FlowDecision,
    MetaResult,
    StudyRecord,
    apply_flowchart,
    forest_data,
    ingest,
    load_vitamin_d,
    meta_analyze,
    pool_fixed,
    pool_random,
)
from .normal import eta_n, log_gamma, std_normal_cdf, std_normal_quantile, xi_n
from .skewtests import SkewTestResult, k_weight, run_test, t1_statistic, t2_statistic, t3_statistic
from .sources import ApproxFormula, Asymptotic, CriticalValueSource, ExactTable, MonteCarlo, parse_source
from .summaries import Scenario, SummaryRecord

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
