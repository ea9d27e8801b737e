"""Exact counts of commuting integer matrix pairs and related divisor sums."""

from ._core import (
    BudgetExceeded,
    Error,
    InvalidInput,
    NotPrime,
    UnsupportedDimension,
    __version__,
    brute_commuting_count,
    count_commuting_2x2,
    fast_padic_count,
    gamma_split,
    lower_bound_certificate,
    main_term,
    moment,
    r_value,
    r_zero,
    run_cli,
    sigma_p,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "InvalidInput",
    "NotPrime",
    "UnsupportedDimension",
    "__version__",
    "brute_commuting_count",
    "count_commuting_2x2",
    "fast_padic_count",
    "gamma_split",
    "lower_bound_certificate",
    "main_term",
    "moment",
    "r_value",
    "r_zero",
    "run_cli",
    "sigma_p",
]
