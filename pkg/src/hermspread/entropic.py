"""Entropic moments ``W_q`` and the Renyi-type quantities built on them.

For integer ``q`` the moment ``W_q[rho_n] = int exp(-q x^2) H~_n(x)^(2q) dx``
is computed without rounding: the integer part of ``H~_n^(2q)`` comes from
exact polynomial powers, the normalization enters as ``norm^(2q)`` and each
even monomial is integrated against ``exp(-q x^2)`` in closed form.  The
result always has the shape ``rational * sqrt(q) * pi^((1-q)/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactreal import ExactReal, mp_context, normalize
from .hermite import coefficients
from .polypow import DensePolynomial, poly_power_direct

__all__ = [
    "DomainError",
    "EntropicMoment",
    "entropic_moment",
    "renyi_entropy",
    "tsallis_entropy",
    "renyi_length",
    "onicescu_heller_length",
    "closed_form_wq",
    "generalized_laguerre",
    "z_functional",
    "d_functional",
    "aptekarev_asymptotic",
    "azor_z4_asymptotic",
    "azor_z4_asymptotic_as_printed",
    "azor_zk_large_k",
    "azor_dk_large_k",
]


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined."""


@dataclass(frozen=True)
class EntropicMoment:
    n: int
    q: int
    value: ExactReal

    def to_float(self, precision_bits: int = 53):
        return self.value.to_float(precision_bits)


def _even_part_power(n: int, power: int) -> list[int]:
    """Integer coefficients of ``P(u)^power`` where ``d(x) = x^(n%2) P(x^2)``."""
    d = coefficients(n).integer_parts
    half = DensePolynomial(d[n % 2 :: 2])
    return list(poly_power_direct(half, power).coeffs)


def _gaussian_sum(coeffs: list[int], x_offset: int, a: int) -> Fraction:
    """``sum_i coeffs[i] * (2j)!/(4^j j!) * a^(-j)`` with ``j = i + x_offset``.

    This is ``int x^(2 x_offset) P(x^2) exp(-a x^2) dx`` divided by
    ``sqrt(pi/a)``.  Done over a common integer denominator.
    """
    if not coeffs:
        return Fraction(0)
    top = len(coeffs) - 1 + x_offset
    scale = 4 * a
    acc = 0
    # (2j)!/j! built incrementally: (2(j+1))!/(j+1)! = (2j)!/j! * 2(2j+1)
    ratio = factorial(2 * x_offset) // factorial(x_offset)
    for i, c in enumerate(coeffs):
        j = i + x_offset
        if c:
            acc += c * ratio * scale ** (top - j)
        ratio *= 2 * (2 * j + 1)
    return Fraction(acc, scale**top)


def _power_integral(n: int, power: int, a: int) -> Fraction:
    """``int exp(-a x^2) d(x)^power dx / sqrt(pi/a)`` for the integer part ``d``."""
    if (n * power) % 2:
        return Fraction(0)
    coeffs = _even_part_power(n, power)
    offset = (power * (n % 2)) // 2
    return _gaussian_sum(coeffs, offset, a)


@lru_cache(maxsize=4096)
def entropic_moment(n: int, q: int) -> EntropicMoment:
    """Exact ``W_q[rho_n]`` for integer ``q >= 1``."""
    if q < 1 or int(q) != q:
        raise DomainError("exact entropic moments need an integer q >= 1")
    if n < 0:
        raise DomainError("degree must be nonnegative")
    q = int(q)
    s = _power_integral(n, 2 * q, q)
    # norm^(2q) = (2^n n!)^(-q) pi^(-q/2);  sqrt(pi/q) = sqrt(q)/q * pi^(1/2)
    r = s / Fraction(2**n * factorial(n)) ** q / q
    return EntropicMoment(n, q, normalize(r, q, 1 - q))


def _check_order(q) -> int:
    if int(q) != q or q < 2:
        raise DomainError("order must be an integer q >= 2")
    return int(q)


def renyi_entropy(n: int, q: int, precision_bits: int = 53):
    q = _check_order(q)
    ctx = mp_context(precision_bits)
    w = entropic_moment(n, q).to_float(precision_bits + 16)
    return ctx.mpf(ctx.log(w) / (1 - q))


def tsallis_entropy(n: int, q: int, precision_bits: int = 53):
    q = _check_order(q)
    ctx = mp_context(precision_bits)
    w = entropic_moment(n, q).to_float(precision_bits + 16)
    return ctx.mpf((1 - w) / (q - 1))


def renyi_length(n: int, q: int, precision_bits: int = 53):
    """``W_q^(-1/(q-1))``; the root is the only rounded step."""
    q = _check_order(q)
    ctx = mp_context(precision_bits)
    w = entropic_moment(n, q).to_float(precision_bits + 16)
    return ctx.mpf(ctx.power(w, ctx.mpf(-1) / (q - 1)))


def onicescu_heller_length(n: int) -> ExactReal:
    """``1/W_2[rho_n]``, exact (a rational multiple of ``sqrt(2 pi)``)."""
    return entropic_moment(n, 2).value.reciprocal()


# -- closed forms for the lowest degrees --------------------------------------


def _gbinom(top: Fraction, k: int) -> Fraction:
    r = Fraction(1)
    for i in range(k):
        r *= (top - i) / (i + 1)
    return r


def generalized_laguerre(degree: int, alpha: Fraction, x: Fraction) -> Fraction:
    """``L_degree^(alpha)(x) = sum_i (-1)^i C(degree+alpha, degree-i) x^i / i!``."""
    alpha, x = Fraction(alpha), Fraction(x)
    return sum(
        (-1) ** i * _gbinom(degree + alpha, degree - i) * x**i / factorial(i)
        for i in range(degree + 1)
    )


def closed_form_wq(n: int, q: int) -> ExactReal:
    """Closed forms of ``W_q[rho_n]`` for ``n`` in ``{0, 1, 2}``."""
    if n not in (0, 1, 2):
        raise DomainError("closed forms exist only for n in {0, 1, 2}")
    if q < 1 or int(q) != q:
        raise DomainError("q must be an integer >= 1")
    q = int(q)
    # q^(-1/2) = sqrt(q)/q
    if n == 0:
        return normalize(Fraction(1, q), q, 1 - q)
    if n == 1:
        # 2^q pi^(-q/2) q^(-q-1/2) Gamma(q+1/2),  Gamma(q+1/2) = (2q)!/(4^q q!) sqrt(pi)
        gamma_rat = Fraction(factorial(2 * q), 4**q * factorial(q))
        r = Fraction(2**q) * gamma_rat / Fraction(q) ** q / q
        return normalize(r, q, 1 - q)
    lag = generalized_laguerre(2 * q, Fraction(-4 * q - 1, 2), Fraction(-q, 2))
    r = Fraction(2**q * factorial(2 * q)) * lag / Fraction(q) ** (2 * q) / q
    return normalize(r, q, 1 - q)


# -- functionals of unnormalized / orthonormal powers -------------------------


def z_functional(n: int, k: int) -> ExactReal:
    """``Z_k[H_n] = int exp(-x^2) H_n(x)^k dx`` with the orthogonal ``H_n``.

    The integer parts of the orthonormal expansion are the coefficients of
    ``H_n`` up to the phase ``(-1)^n``, which only matters for odd ``k``
    with odd ``n``, where the integral vanishes anyway.
    """
    if k < 1:
        raise DomainError("k must be positive")
    s = _power_integral(n, k, 1)
    return normalize(s, 1, 1)


def d_functional(n: int, k: int) -> ExactReal:
    """``D_k[H_n] = sqrt(2/pi) int exp(-2x^2) H~_n(x)^k dx``.

    Exact for even ``k`` (and whenever the integral vanishes).  Odd ``k``
    with even ``n`` carries ``pi^(-k/4)``, outside the exact number system,
    and raises :class:`DomainError`.
    """
    if k < 1:
        raise DomainError("k must be positive")
    if (n * k) % 2:
        return normalize(0)
    if k % 2:
        raise DomainError("odd k with even n involves pi^(-k/4); no exact form")
    s = _power_integral(n, k, 2)
    # sqrt(2/pi) * sqrt(pi/2) = 1; norm^k = (2^n n!)^(-k/2) pi^(-k/4)
    r = s / Fraction(2**n * factorial(n)) ** (k // 2)
    return normalize(r, 1, -(k // 2))


# -- asymptotic comparison formulas (floating point only) ---------------------


def aptekarev_asymptotic(n: int, q, precision_bits: int = 53):
    """Large-``n`` leading term of ``W_q[rho_n]`` for real ``q`` in ``[0, 4/3]``."""
    q = Fraction(q) if not isinstance(q, float) else q
    if not 0 <= q <= Fraction(4, 3):
        raise DomainError("formula holds only for q in [0, 4/3]")
    ctx = mp_context(precision_bits)
    qf = ctx.mpf(q.numerator) / q.denominator if isinstance(q, Fraction) else ctx.mpf(q)
    g = ctx.gamma
    lead = (2 / ctx.pi) ** qf * g(qf + 0.5) * g(1 - qf / 2) / (g(qf + 1) * g(1.5 - qf / 2))
    return lead * ctx.mpf(2 * n + 1) ** ((1 - qf) / 2)


def azor_z4_asymptotic(n: int, precision_bits: int = 53):
    """Large-``n`` expansion of ``Z_4[H_n]``.

    ``3/(4n) sqrt(3/pi) 6^(2n) (n!)^2 (1 - 1/(4n) + 3/(16 n^2))``.  The
    factorial sits in the numerator: ``Z_4`` grows like ``36^n (n!)^2``
    (see :func:`azor_z4_asymptotic_as_printed` for the other placement).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    ctx = mp_context(precision_bits)
    nn = ctx.mpf(n)
    series = 1 - 1 / (4 * nn) + 3 / (16 * nn * nn)
    return 3 / (4 * nn) * ctx.sqrt(3 / ctx.pi) * ctx.mpf(36) ** n * ctx.factorial(n) ** 2 * series


def azor_z4_asymptotic_as_printed(n: int, precision_bits: int = 53):
    """Same expansion with ``(n!)^2`` dividing, as it is sometimes quoted."""
    ctx = mp_context(precision_bits)
    return azor_z4_asymptotic(n, precision_bits) / ctx.factorial(n) ** 4


def azor_zk_large_k(n: int, k: int, precision_bits: int = 53):
    """Leading large-``k`` behaviour of ``Z_k[H_n]`` (qualitative only)."""
    ctx = mp_context(precision_bits)
    kn = ctx.mpf(k * n)
    parity = 1 + (-1) ** (k * n)
    return parity * ctx.sqrt(ctx.mpf(2) ** (k * n - 1) * ctx.pi) * (kn / ctx.e) ** (kn / 2) * ctx.exp(
        -ctx.mpf(n - 1) / 2
    )


def azor_dk_large_k(n: int, k: int, precision_bits: int = 53):
    """Leading large-``k`` behaviour of ``D_k[H_n]`` (qualitative only)."""
    ctx = mp_context(precision_bits)
    kn = ctx.mpf(k * n)
    parity = 1 + (-1) ** (k * n)
    return parity / ctx.sqrt(2) * (kn / ctx.e) ** (kn / 2) * ctx.exp(-ctx.mpf(n - 1))
