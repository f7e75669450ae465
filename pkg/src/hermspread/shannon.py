"""Shannon entropy and length of ``rho_n`` and the moment-based upper bounds.

``S[rho_n] = n + 1/2 - E_n`` with ``E_n = int rho_n ln H~_n^2``; the
logarithmic integral has no closed form and is computed by the zero-panel
quadrature of :mod:`hermspread.quadrature`.  Entropies are in nats.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .entropic import DomainError
from .exactreal import mp_context
from .hermite import moment, orthonormal_eval
from .quadrature import (
    ConvergenceFailure,
    PrecisionNotMet,
    QuadratureConfig,
    hermite_zeros,
    integrate_panels,
    positive_breakpoints,
)

__all__ = [
    "QuadratureConfig",
    "ShannonResult",
    "ConvergenceFailure",
    "PrecisionNotMet",
    "BoundSearchWarning",
    "hermite_zeros",
    "shannon_entropy",
    "shannon_length",
    "shannon_asymptotic",
    "kl_upper_bound",
    "optimal_bound",
    "OptimalBound",
]


class BoundSearchWarning(UserWarning):
    """The optimal ``k`` sits too close to the search cap to be trusted."""


@dataclass(frozen=True)
class ShannonResult:
    n: int
    entropy: object  # mpf, nats
    length: object  # mpf, same units as x
    error_estimate: object  # mpf, absolute error of entropy


@lru_cache(maxsize=1024)
def shannon_entropy(n: int, cfg: QuadratureConfig = QuadratureConfig()) -> ShannonResult:
    """Shannon entropy of ``rho_n`` by zero-panel quadrature.

    Raises
    ------
    PrecisionNotMet
        If panel refinement cannot reach ``cfg.tolerance``.
    ConvergenceFailure
        If the polynomial zeros cannot be located.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    bits = cfg.working_bits
    ctx = mp_context(bits)

    def integrand(x):
        h = orthonormal_eval(n, x, bits)
        h2 = h * h
        if h2 == 0:
            return ctx.zero
        return ctx.exp(-x * x) * h2 * ctx.log(h2)

    pts = positive_breakpoints(n, cfg)
    half, err = integrate_panels(integrand, pts, cfg)
    out = mp_context(cfg.precision_bits)
    entropy = n + ctx.mpf(0.5) - 2 * half
    if 2 * err > cfg.tolerance:
        raise PrecisionNotMet(f"S[rho_{n}] error estimate {float(2 * err):.3g} above tolerance")
    return ShannonResult(n, out.mpf(entropy), out.mpf(ctx.exp(entropy)), out.mpf(2 * err))


def shannon_length(n: int, cfg: QuadratureConfig = QuadratureConfig()) -> ShannonResult:
    """``N[rho_n] = exp(S[rho_n])``; the error estimate refers to the entropy."""
    return shannon_entropy(n, cfg)


def shannon_asymptotic(n: int, precision_bits: int = 53):
    """Large-``n`` Shannon length ``pi sqrt(2n) / e``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = mp_context(precision_bits)
    return ctx.pi * ctx.sqrt(2 * n) / ctx.e


def kl_upper_bound(n: int, k: int, precision_bits: int = 53):
    """Upper bound ``c_{k,n} = A_k <x^k>_n^(1/k)`` on the Shannon length.

    ``A_k = 2 (e k)^(1/k) Gamma(1/k) / k`` comes from the prior density
    proportional to ``exp(-a x^k)`` with the optimal ``a``; the moment is
    taken exactly.
    """
    if k < 2 or k % 2:
        raise DomainError("k must be an even integer >= 2")
    ctx = mp_context(precision_bits + 10)
    m = moment(n, k)
    kk = ctx.mpf(k)
    a_k = 2 * (ctx.e * kk) ** (1 / kk) * ctx.gamma(1 / kk) / kk
    val = a_k * (ctx.mpf(m.numerator) / m.denominator) ** (1 / kk)
    return mp_context(precision_bits).mpf(val)


@dataclass(frozen=True)
class OptimalBound:
    n: int
    k_opt: int
    bound: object  # mpf
    near_cap: bool


def optimal_bound(n: int, k_max: int = 40, precision_bits: int = 53) -> OptimalBound:
    """Minimize ``c_{k,n}`` over even ``k <= k_max``; ties go to the smaller ``k``.

    ``near_cap`` is set (and a :class:`BoundSearchWarning` emitted) when the
    minimizer lies within 4 of ``k_max``.
    """
    if k_max < 2:
        raise DomainError("k_max must be >= 2")
    best_k, best = None, None
    for k in range(2, k_max + 1, 2):
        c = kl_upper_bound(n, k, precision_bits)
        if best is None or c < best:
            best_k, best = k, c
    near_cap = k_max - best_k < 4
    if near_cap:
        warnings.warn(
            f"k_opt={best_k} for n={n} is within 4 of k_max={k_max}; raise k_max",
            BoundSearchWarning,
            stacklevel=2,
        )
    return OptimalBound(n, best_k, best, near_cap)
