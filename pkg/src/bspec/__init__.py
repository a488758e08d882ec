"""Orthogonal exponentials for Bernoulli convolution measures with rational
contraction ratio: exact zero-set oracle, orthogonal families, maximality
witnesses, certified transform enclosures and Parseval scans."""

from .errors import InvalidArgument, ResourceLimit, UnsupportedClassification
from .exact import (
    DigitExpansion,
    LambdaParam,
    format_rational,
    from_digits,
    parse_rational,
    reduce,
    to_digits,
    valuation,
)
from .families import (
    FrequencyFamily,
    LambdaClass,
    SearchResult,
    classify_lambda,
    even_b_family,
    gamma_k,
    lambda_k,
    max_set_search,
    quarter_onb,
    union_family,
)
from .maximality import WitnessResult, is_member_gamma1, non_orthogonal_witness
from .oracle import (
    OrthogonalityReport,
    ZeroDecomposition,
    are_orthogonal,
    check_family,
    decompose_zero,
    in_zero_set,
    zero_witnesses,
)
from .parseval import ScanConfig, ScanRow, parseval_sum, peak_report, scan
from .transform import (
    Enclosure,
    EvalParams,
    functional_equation_residual,
    moment,
    moment_series_check,
    nu_hat,
)

__version__ = "0.1.0"
