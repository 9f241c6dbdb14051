"""Spearman's footrule rank correlation.

Thin wrapper over the C++ core. Every function that rejects its input
raises :class:`FootruleError`, a subclass of :class:`ValueError`.
"""

from ._footrule import (
    ExactNullDistribution,
    FootruleError,
    Statistic,
    compute_ranks,
    cond_exp_abs_diff,
    enumerate_null_distribution,
    footrule,
    independence_test,
    ks_two_sample,
    limiting_variance,
    moment_study,
    null_variance,
    phi_double_prime,
    phi_prime,
    simulate,
)

__all__ = [
    "ExactNullDistribution",
    "FootruleError",
    "Statistic",
    "compute_ranks",
    "cond_exp_abs_diff",
    "enumerate_null_distribution",
    "footrule",
    "independence_test",
    "ks_two_sample",
    "limiting_variance",
    "moment_study",
    "null_variance",
    "phi_double_prime",
    "phi_prime",
    "simulate",
]
