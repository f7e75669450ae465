"""Panel quadrature for integrands with logarithmic zeros of ``H~_n``.

Integrands such as ``rho_n ln H~_n^2`` are smooth except at the zeros of
the polynomial, where they behave like ``t^2 ln t``.  The half line is cut
into panels whose endpoints are those zeros, and each panel gets a
fixed-order tanh-sinh rule, whose nodes cluster double-exponentially
towards both ends, so the endpoint singularity costs nothing in the
convergence rate.  A panel is bisected until the rule and its nested
half-order companion agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .exactreal import mp_context

__all__ = [
    "QuadratureConfig",
    "ConvergenceFailure",
    "PrecisionNotMet",
    "hermite_zeros",
    "positive_breakpoints",
    "integrate_panels",
    "entropic_moment_quadrature",
]

_GUARD_BITS = 20


class ConvergenceFailure(ArithmeticError):
    """Newton refinement of the polynomial zeros did not settle."""


class PrecisionNotMet(ArithmeticError):
    """Panel refinement could not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the zero-panel quadrature.

    ``tail_halfwidth_sigma`` sets the first truncation guess
    ``sigma * sqrt(n + 1/2)``; the cutoff is then pushed out until the
    estimated Gaussian tail drops below ``2^-precision_bits``, well under
    ``tolerance``, so truncation never dominates the panel error.
    """

    nodes_per_panel: int = 129
    tail_halfwidth_sigma: float = 2.0
    precision_bits: int = 128
    zero_refine_tol: float | None = None
    max_depth: int = 10

    def __post_init__(self) -> None:
        if self.nodes_per_panel < 8:
            raise ValueError("nodes_per_panel must be >= 8")
        if self.tail_halfwidth_sigma <= 0:
            raise ValueError("tail_halfwidth_sigma must be positive")
        if self.precision_bits < 53:
            raise ValueError("precision_bits must be >= 53")
        if self.zero_refine_tol is not None and self.zero_refine_tol <= 0:
            raise ValueError("zero_refine_tol must be positive")

    @property
    def tolerance(self) -> float:
        return 2.0 ** (-self.precision_bits / 2)

    @property
    def zero_tol(self) -> float:
        if self.zero_refine_tol is not None:
            return self.zero_refine_tol
        return 2.0 ** (-(self.precision_bits - 8))

    @property
    def working_bits(self) -> int:
        return self.precision_bits + _GUARD_BITS


@lru_cache(maxsize=64)
def _rule(m: int, bits: int):
    """Fixed-step tanh-sinh rule on ``(0, 1)`` with two nested coarser rules.

    Returns ``(dist, right, level, weight)``: node ``i`` sits at distance
    ``dist[i]`` from the left end (or the right end if ``right[i]``), so
    nodes packed against an endpoint keep full relative accuracy.
    ``level[i]`` is 2 if the node also belongs to the rules with steps
    ``2h`` and ``4h``, 1 if only to the ``2h`` rule, else 0.
    """
    ctx = mp_context(bits)
    half = max(4, (m - 1) // 2)
    half += -half % 4
    # beyond t_max the weights are below 2^-bits
    t_max = ctx.asinh((bits * ctx.ln2 + 10) / ctx.pi)
    h = t_max / half
    dist, right, level, weight = [], [], [], []
    for k in range(-half, half + 1):
        t = k * h
        u = ctx.pi / 2 * ctx.sinh(abs(t))
        dist.append(1 / (1 + ctx.exp(2 * u)))
        right.append(k > 0)
        level.append(2 if k % 4 == 0 else 1 if k % 2 == 0 else 0)
        weight.append(h * ctx.pi / 4 * ctx.cosh(t) / ctx.cosh(u) ** 2)
    return tuple(dist), tuple(right), tuple(level), tuple(weight)


@lru_cache(maxsize=256)
def _positive_zeros(n: int, tol: float, bits: int) -> tuple:
    if n < 1:
        return ()
    from .hermite import orthonormal_eval

    ctx = mp_context(bits)
    guesses, _ = np.polynomial.hermite.hermgauss(n)
    start = [g for g in guesses if g > 1e-12]
    zeros = []
    sqrt2n = ctx.sqrt(2 * n)
    tol_mp = ctx.mpf(tol)
    for g in sorted(start):
        x = ctx.mpf(float(g))
        for _ in range(60):
            h, h_prev = orthonormal_eval(n, x, bits, with_previous=True)
            dx = h / (sqrt2n * h_prev)  # H~_n' = sqrt(2n) H~_{n-1}
            x -= dx
            if abs(dx) < tol_mp:
                break
        else:
            raise ConvergenceFailure(f"zero near {g} of degree {n} did not converge")
        zeros.append(x)
    for a, b in zip(zeros, zeros[1:]):
        if not a < b:
            raise ConvergenceFailure(f"zeros of degree {n} collapsed during refinement")
    return tuple(zeros)


def hermite_zeros(n: int, tol: float = 1e-30, precision_bits: int = 128) -> list:
    """All ``n`` zeros of ``H~_n``, increasing, exactly symmetric about 0.

    Golub-Welsch estimates (double precision) are polished by Newton steps
    at ``precision_bits``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    pos = list(_positive_zeros(n, tol, precision_bits))
    ctx = mp_context(precision_bits)
    mid = [ctx.zero] if n % 2 else []
    return [-z for z in reversed(pos)] + mid + pos


def _tail_cutoff(n: int, cfg: QuadratureConfig, start, log_density: Callable, decay_scale: float = 1.0):
    """Smallest grid point beyond ``start`` where the tail estimate is below tolerance."""
    ctx = mp_context(cfg.working_bits)
    tol = ctx.ldexp(1, -cfg.precision_bits)
    x = max(ctx.mpf(start) + 1, ctx.mpf(cfg.tail_halfwidth_sigma) * ctx.sqrt(n + ctx.mpf(0.5)))
    for _ in range(10_000):
        if x * x > 2 * n + 1:
            # d/dx ln rho <= -(2x - 2n/x) beyond the turning point
            rate = decay_scale * (2 * x - 2 * n / x)
            log_rho, log_weight = log_density(x)
            if log_rho + ctx.log(1 + abs(log_weight)) - ctx.log(rate) < ctx.log(tol):
                return x
        x += ctx.mpf(0.5)
    raise PrecisionNotMet("tail cutoff search did not terminate")


def positive_breakpoints(n: int, cfg: QuadratureConfig, log_density: Callable | None = None, decay_scale: float = 1.0) -> list:
    """Panel endpoints on ``[0, X]``: the origin, the positive zeros, then tail panels."""
    ctx = mp_context(cfg.working_bits)
    zeros = list(_positive_zeros(n, cfg.zero_tol, cfg.working_bits))
    last = zeros[-1] if zeros else ctx.zero
    if log_density is None:
        log_density = _default_log_density(n, cfg.working_bits)
    cutoff = _tail_cutoff(n, cfg, last, log_density, decay_scale)
    pts = [ctx.zero] + zeros
    width = ctx.mpf(1)
    if len(zeros) >= 2:
        width = min(width, 2 * (zeros[-1] - zeros[-2]))
    steps = max(1, int(math.ceil(float((cutoff - last) / width))))
    step = (cutoff - last) / steps
    pts += [last + step * i for i in range(1, steps + 1)]
    return pts


def _default_log_density(n: int, bits: int):
    from .hermite import orthonormal_eval

    ctx = mp_context(bits)

    def f(x):
        h = orthonormal_eval(n, x, bits)
        h2 = h * h
        return -x * x + ctx.log(h2), ctx.log(h2)

    return f


def _panel(f: Callable, a, b, rule):
    """``int_a^b f`` with steps ``h``, ``2h``, ``4h``; returns ``(value, error)``.

    Tanh-sinh roughly squares its error each time the step halves, so the
    error of the finest level is extrapolated from the two differences
    ``d1 = |Q_h - Q_2h|`` and ``d2 = |Q_h - Q_4h|`` as ``d1^(ln d1 / ln d2)``.
    """
    dist, right, level, weight = rule
    width = b - a
    sums = [0, 0, 0]
    for d, r, lv, w in zip(dist, right, level, weight):
        y = w * f(b - width * d if r else a + width * d)
        for j in range(lv + 1):
            sums[j] += y
    q1 = width * sums[0]
    q2 = 2 * width * sums[1]
    q4 = 4 * width * sums[2]
    d1, d2 = abs(q1 - q2), abs(q1 - q4)
    if d1 == 0:
        return q1, d1
    if d1 >= d2 or d2 >= 1:
        return q1, d1
    log = d1.context.log
    return q1, min(d1, d1 ** (log(d1) / log(d2)))


def integrate_panels(f: Callable, breakpoints: list, cfg: QuadratureConfig):
    """Sum of ``f`` over consecutive panels; returns ``(value, error_estimate)``.

    Each panel is accepted once its error estimate is within its share of
    ``cfg.tolerance``; otherwise it is bisected, up to ``cfg.max_depth``
    times.  Summation runs left to right, so results are reproducible.
    """
    bits = cfg.working_bits
    ctx = mp_context(bits)
    rule = _rule(cfg.nodes_per_panel, bits)
    panels = list(zip(breakpoints, breakpoints[1:]))
    tol = ctx.mpf(cfg.tolerance) / max(1, len(panels))
    total = ctx.zero
    err_total = ctx.zero
    for a, b in panels:
        stack = [(a, b, 0)]
        while stack:
            lo, hi, depth = stack.pop()
            q_fine, err = _panel(f, lo, hi, rule)
            floor = ctx.ldexp(abs(q_fine), 10 - bits)
            if err <= ctx.ldexp(tol, -depth) or err <= floor:
                total += q_fine
                err_total += err
                continue
            if depth >= cfg.max_depth:
                raise PrecisionNotMet(
                    f"panel [{float(lo):.6g}, {float(hi):.6g}] still off by {float(err):.3g}"
                )
            mid = (lo + hi) / 2
            # push right half first so the left half is summed first
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    return total, err_total


def entropic_moment_quadrature(n: int, q, cfg: QuadratureConfig | None = None):
    """``W_q[rho_n]`` for real ``q > 0`` by zero-panel quadrature.

    Returns ``(value, error_estimate)``; used where no exact form exists.
    """
    from .hermite import orthonormal_eval

    cfg = cfg or QuadratureConfig()
    if q <= 0:
        raise ValueError("q must be positive")
    bits = cfg.working_bits
    ctx = mp_context(bits)
    qm = ctx.mpf(q.numerator) / q.denominator if isinstance(q, Fraction) else ctx.mpf(q)

    def f(x):
        h = orthonormal_eval(n, x, bits)
        if h == 0:
            return ctx.zero
        return ctx.exp(-qm * x * x) * abs(h) ** (2 * qm)

    def log_density(x):
        h = orthonormal_eval(n, x, bits)
        return qm * (-x * x + ctx.log(h * h)), ctx.zero

    pts = positive_breakpoints(n, cfg, log_density, decay_scale=float(qm))
    val, err = integrate_panels(f, pts, cfg)
    return 2 * val, 2 * err
