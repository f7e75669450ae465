"""Orthonormal Hermite polynomials: coefficients, moments and Fisher length.

The orthonormal polynomial is written as ``c_l = norm * d_l`` where the
``d_l`` are integers and ``norm = (2^n n! sqrt(pi))^(-1/2)``.  The integer
parts coincide with the coefficients of the physicists' ``H_n`` up to the
overall phase ``(-1)^n`` carried by the coefficient formula used here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactreal import ExactReal, mp_context, normalize, sqrt_rational
from .polypow import DensePolynomial

__all__ = [
    "HermiteCoefficients",
    "RakhmanovDensity",
    "coefficients",
    "moment",
    "gaussian_moment",
    "standard_deviation",
    "fisher_information",
    "fisher_length",
    "density_eval",
    "orthonormal_eval",
]


@dataclass(frozen=True)
class HermiteCoefficients:
    """Expansion ``H~_n(x) = sum_l norm * d_l * x^l``.

    ``norm`` itself carries ``pi^(-1/4)``, which has no exact
    :class:`ExactReal` form, so the exact field is its square
    ``norm_squared = 1 / (2^n n! sqrt(pi))``.  Every quantity built from the
    density only ever needs even powers of ``norm``.
    """

    n: int
    integer_parts: tuple[int, ...]
    norm_squared: ExactReal

    @property
    def polynomial(self) -> DensePolynomial:
        return DensePolynomial(self.integer_parts)

    def coefficient_squared(self, l: int) -> ExactReal:
        return self.norm_squared * (self.integer_parts[l] ** 2)

    def normalization(self, precision_bits: int = 53):
        ctx = mp_context(precision_bits)
        return ctx.sqrt(self.norm_squared.to_float(precision_bits))

    def coefficient(self, l: int, precision_bits: int = 53):
        """Numerical ``c_l``."""
        return self.integer_parts[l] * self.normalization(precision_bits)


@dataclass(frozen=True)
class RakhmanovDensity:
    """``rho_n(x) = exp(-x^2) * H~_n(x)^2``."""

    n: int
    coefficients: HermiteCoefficients

    @classmethod
    def of_degree(cls, n: int) -> "RakhmanovDensity":
        return cls(n, coefficients(n))

    def __call__(self, x, precision_bits: int = 53):
        return density_eval(self.n, x, precision_bits)


@lru_cache(maxsize=512)
def coefficients(n: int) -> HermiteCoefficients:
    """Expansion coefficients of the orthonormal Hermite polynomial of degree ``n``.

    The phase ``(-1)^((3n-l)/2)`` is kept as written in the closed form;
    it flips the sign of the whole polynomial for odd ``n`` relative to the
    positive-leading-coefficient convention.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    d = []
    nf = factorial(n)
    for l in range(n + 1):
        if (n - l) % 2:
            d.append(0)
            continue
        m = (n - l) // 2
        sign = -1 if ((3 * n - l) // 2) % 2 else 1
        d.append(sign * nf * 2**l // (factorial(m) * factorial(l)))
    norm_sq = normalize(Fraction(1, 2**n * nf), 1, -1)
    return HermiteCoefficients(n, tuple(d), norm_sq)


def _rising(a: int, i: int) -> int:
    r = 1
    for j in range(i):
        r *= a + j
    return r


def moment(n: int, k: int) -> Fraction:
    """``<x^k>_n`` as an exact rational.

    Even ``k`` uses the terminating series
    ``k!/(2^k (k/2)!) * 2F1(-n, -k/2; 1; 2)``; odd moments vanish.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k % 2:
        return Fraction(0)
    h = k // 2
    s = 0
    for i in range(min(n, h) + 1):
        s += Fraction(_rising(-n, i) * _rising(-h, i) * 2**i, factorial(i) ** 2)
    return Fraction(factorial(k), 2**k * factorial(h)) * s


def gaussian_moment(j: int, a: int | Fraction = 1) -> ExactReal:
    """``integral x^(2j) exp(-a x^2) dx = (2j)!/(4^j j!) * sqrt(pi) * a^(-j-1/2)``."""
    a = Fraction(a)
    r = Fraction(factorial(2 * j), 4**j * factorial(j)) / a**j
    return r * sqrt_rational(1 / a) * ExactReal.pi_power(1)


def standard_deviation(n: int) -> ExactReal:
    """``sqrt(n + 1/2)``."""
    return sqrt_rational(Fraction(2 * n + 1, 2))


def fisher_information(n: int) -> Fraction:
    return Fraction(4 * n + 2)


def fisher_length(n: int) -> ExactReal:
    """``1/sqrt(4n + 2)``, always in ``(0, 1/sqrt(2)]``."""
    return sqrt_rational(Fraction(1, 4 * n + 2))


@lru_cache(maxsize=64)
def _recurrence_coeffs(n: int, precision_bits: int):
    ctx = mp_context(precision_bits)
    a = [ctx.sqrt(ctx.mpf(2) / (k + 1)) for k in range(n)]
    b = [ctx.sqrt(ctx.mpf(k) / (k + 1)) for k in range(n)]
    p0 = 1 / ctx.sqrt(ctx.sqrt(ctx.pi))
    return p0, a, b


def orthonormal_eval(n: int, x, precision_bits: int = 53, with_previous: bool = False):
    """``H~_n(x)`` by the three-term recurrence at the working precision.

    Positive leading coefficient convention (the density only needs the
    square).  With ``with_previous`` also returns ``H~_{n-1}(x)``.
    """
    p0, a, b = _recurrence_coeffs(n, precision_bits)
    ctx = mp_context(precision_bits)
    x = ctx.mpf(x)
    prev, cur = ctx.zero, p0
    for k in range(n):
        prev, cur = cur, a[k] * x * cur - b[k] * prev
    return (cur, prev) if with_previous else cur


def density_eval(n: int, x, precision_bits: int = 53):
    """``rho_n(x) = exp(-x^2) * H~_n(x)^2``."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    ctx = mp_context(precision_bits)
    x = ctx.mpf(x)
    h = orthonormal_eval(n, x, precision_bits)
    return ctx.exp(-x * x) * h * h
