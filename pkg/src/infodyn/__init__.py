"""infodyn: information dynamics of time series.

Entropy, mutual information, transfer entropy, active information storage and
relatives, with interchangeable estimator families (discrete plug-in,
Gaussian, box-kernel, KSG nearest-neighbor, ordinal/permutation), pointwise
local variants, and surrogate/analytic significance testing.
"""

from .discrete import (DiscreteActiveInfoStorage, DiscreteConditionalMutualInfo,
                       DiscreteConditionalTransferEntropy, DiscreteEntropy,
                       DiscreteEntropyRate, DiscreteMultiInfo, DiscreteMutualInfo,
                       DiscretePredictiveInfo, DiscreteSeparableInfo,
                       DiscreteTransferEntropy)
from .embedding import EmbeddingSpec, embed
from .exceptions import (AlphabetError, AnalyticNullUnavailableError, DataError,
                         DegenerateCovarianceError, InfodynError,
                         InsufficientSamplesError, LifecycleError, PropertyError,
                         SurrogateError)
from .gaussian import (GaussianActiveInfoStorage, GaussianConditionalMutualInfo,
                       GaussianConditionalTransferEntropy, GaussianEntropy,
                       GaussianMutualInfo, GaussianTransferEntropy)
from .io_tables import DataTable, read_table, write_table
from .kernel import (KernelActiveInfoStorage, KernelEntropy, KernelMultiInfo,
                     KernelMutualInfo, KernelTransferEntropy, kernel_density_at,
                     suggest_min_width)
from .ksg import (KozachenkoEntropy, KsgActiveInfoStorage, KsgConditionalMutualInfo,
                  KsgConditionalTransferEntropy, KsgMultiInfo, KsgMutualInfo,
                  KsgPredictiveInfo, KsgTransferEntropy)
from .mathutils import combine_values, decode_values, digamma, discretise, normalise
from .registry import make_calculator
from .results import MeasureResult, NullDistribution
from .surrogates import (analytic_significance, compute_significance,
                         discrete_analytic_null, gaussian_analytic_null)
from .symbolic import (SymbolicEntropy, SymbolicTransferEntropy, decode_pattern,
                       encode_pattern, ordinal_ranks, ordinalize)

__version__ = "0.1.0"
