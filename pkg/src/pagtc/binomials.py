"""Binomial coefficients under the zero-outside-range convention.

C(a, b) is taken to be 0 whenever a or b is negative, and also when
b > a >= 0, so that vanishing combinatorial counts short-circuit cleanly.
Two backends are provided: exact arbitrary-precision integers for oracles
and small instances, and a log-domain float backend that evaluates huge
binomial ratios without overflow.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

__all__ = ["binom_exact", "log_binom", "signed_log_binom", "binom"]


def binom_exact(a: int, b: int) -> int:
    """Exact C(a, b); 0 for negative arguments or b > a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


_LOG_FACTORIAL = gammaln(np.arange(1024, dtype=np.float64) + 1.0)


def _log_factorial(x: np.ndarray) -> np.ndarray:
    """log(x!) via a cached table, grown on demand."""
    global _LOG_FACTORIAL
    top = int(x.max(initial=0))
    if top >= len(_LOG_FACTORIAL):
        _LOG_FACTORIAL = gammaln(np.arange(2 * (top + 1), dtype=np.float64) + 1.0)
    return _LOG_FACTORIAL[x]


def log_binom(a, b):
    """log C(a, b) for scalar or array input; -inf where the convention gives 0."""
    a_arr = np.asarray(a, dtype=np.int64)
    b_arr = np.asarray(b, dtype=np.int64)
    valid = (a_arr >= 0) & (b_arr >= 0) & (b_arr <= a_arr)
    a_safe = np.where(valid, a_arr, 0)
    b_safe = np.where(valid, b_arr, 0)
    out = _log_factorial(a_safe) - _log_factorial(b_safe) - _log_factorial(a_safe - b_safe)
    out = np.where(valid, out, -np.inf)
    if np.isscalar(a) and np.isscalar(b):
        return float(out)
    return out


def signed_log_binom(a: int, b: int) -> tuple[int, float]:
    """(sign, log|C(a, b)|) pair; sign is 0 exactly when the coefficient is 0."""
    if a < 0 or b < 0 or b > a:
        return 0, -math.inf
    return 1, float(log_binom(a, b))


def binom(a: int, b: int, mode: str = "exact"):
    """C(a, b) in the requested backend.

    ``mode="exact"`` returns the arbitrary-precision integer value;
    ``mode="log"`` returns the (sign, log) pair of :func:`signed_log_binom`.
    """
    if mode == "exact":
        return binom_exact(a, b)
    if mode == "log":
        return signed_log_binom(a, b)
    raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'log'")
