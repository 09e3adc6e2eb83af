"""Distance covariance and the affinely invariant distance correlation.

Sample statistics (:mod:`aidcor.stats`), exact values for Gaussian
populations (:mod:`aidcor.gaussian`), the special functions behind them
(:mod:`aidcor.specfun`), correlograms for vector time series
(:mod:`aidcor.timeseries`) and seeded Monte Carlo checks
(:mod:`aidcor.montecarlo`).
"""

from .errors import (
    AidcorError,
    DomainError,
    LagTooLargeError,
    LengthMismatchError,
    NotPositiveDefiniteError,
    SingularMatrixError,
    TooFewSamplesError,
)
from .gaussian import (
    GaussianSpec,
    PopulationResult,
    aidcor_gaussian,
    aidcov2_gaussian,
    aidcov2_gaussian_hyp,
    aidvar2_gaussian,
    dcov2_gaussian_scalar,
    lambda_from_spec,
    pearson_to_dcor,
)
from .montecarlo import McReport, RngSpec, consistency_experiment, sample_mvn
from .stats import DcovResult, dcor, dcor_sample, dcor_sample_affine, dcov2_sample
from .timeseries import CorrelogramResult, VectorSeries, auto_dcor, cross_dcor

__version__ = "0.1.0"
