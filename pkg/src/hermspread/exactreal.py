"""Exact numbers of the shape ``r * sqrt(t) * pi^(a/2)``.

Every closed-form spreading quantity of the orthonormal Hermite polynomials
factors as a rational times a single square root times a half-integer power
of pi, so a three-field canonical form is enough to keep them exact:

    value = rational * sqrt(radicand) * pi**(pi_half_exp / 2)

``radicand`` is a positive squarefree integer, so two values are equal iff
their fields are equal.  Pi is kept symbolic until :func:`to_float`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational

import mpmath

__all__ = [
    "ExactReal",
    "KindMismatch",
    "normalize",
    "mul",
    "add",
    "to_float",
    "sqrt_rational",
    "parse",
    "mp_context",
]


class KindMismatch(ValueError):
    """Raised when adding values with different surd or pi factors."""


@lru_cache(maxsize=None)
def mp_context(precision_bits: int) -> mpmath.ctx_mp.MPContext:
    """Private mpmath context at a fixed precision.

    Contexts are never mutated after creation, so they can be shared between
    threads (the global ``mpmath.mp`` cannot).
    """
    ctx = mpmath.MPContext()
    ctx.prec = precision_bits
    return ctx


def _split_square(t: int) -> tuple[int, int]:
    """Return ``(s, u)`` with ``t == s*s*u`` and ``u`` squarefree."""
    if t < 1:
        raise ValueError(f"radicand must be >= 1, got {t}")
    s, u = 1, 1
    p = 2
    # once p^3 > t, the cofactor is 1, a prime, a product of two primes or a prime square
    while p * p * p <= t:
        e = 0
        while t % p == 0:
            t //= p
            e += 1
        s *= p ** (e // 2)
        u *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = isqrt(t)
    if r * r == t:
        return s * r, u
    return s, u * t


@dataclass(frozen=True, eq=False)
class ExactReal:
    """Canonical exact value ``rational * sqrt(radicand) * pi^(pi_half_exp/2)``.

    Construct through :func:`normalize` (or the helpers) unless the fields
    are already canonical; the constructor validates but does not rewrite.
    """

    rational: Fraction
    radicand: int = 1
    pi_half_exp: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.rational, Fraction):
            object.__setattr__(self, "rational", Fraction(self.rational))
        if self.radicand < 1:
            raise ValueError("radicand must be positive")
        s, u = _split_square(self.radicand)
        if s != 1:
            raise ValueError(f"radicand {self.radicand} is not squarefree; use normalize()")
        if self.rational == 0 and (self.radicand != 1 or self.pi_half_exp != 0):
            raise ValueError("zero must have radicand 1 and pi_half_exp 0; use normalize()")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, r: Rational | int) -> "ExactReal":
        return cls(Fraction(r))

    @classmethod
    def pi_power(cls, half_exp: int) -> "ExactReal":
        """``pi ** (half_exp / 2)``."""
        return cls(Fraction(1), 1, half_exp)

    # -- queries ----------------------------------------------------------
    @property
    def kind(self) -> tuple[int, int]:
        return self.radicand, self.pi_half_exp

    def is_zero(self) -> bool:
        return self.rational == 0

    def sign(self) -> int:
        return (self.rational > 0) - (self.rational < 0)

    def square(self) -> "ExactReal":
        return mul(self, self)

    def reciprocal(self) -> "ExactReal":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        # 1/(r sqrt t) = sqrt(t) / (r t)
        return normalize(1 / (self.rational * self.radicand), self.radicand, -self.pi_half_exp)

    def to_float(self, precision_bits: int = 53):
        return to_float(self, precision_bits)

    # -- operators --------------------------------------------------------
    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other.reciprocal())

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(other, self.reciprocal())

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.rational, self.radicand, self.pi_half_exp)

    def __pow__(self, k: int) -> "ExactReal":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        result = ExactReal(Fraction(1))
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is None:
            raise TypeError("cannot compare")
        sa, sb = self.sign(), other.sign()
        if sa != sb or sa == 0:
            return (sa > sb) - (sa < sb)
        if self.pi_half_exp == other.pi_half_exp:
            # same sign; compare squares, flipping for negatives
            a2 = self.rational**2 * self.radicand
            b2 = other.rational**2 * other.radicand
            c = (a2 > b2) - (a2 < b2)
            return c * sa
        # pi is transcendental, so unequal pi powers never tie exactly
        x, y = to_float(self, 256), to_float(other, 256)
        return (x > y) - (x < y)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self.rational, self.radicand, self.pi_half_exp) == (
            other.rational,
            other.radicand,
            other.pi_half_exp,
        )

    def __hash__(self) -> int:
        if self.radicand == 1 and self.pi_half_exp == 0:
            return hash(self.rational)
        return hash((self.rational, self.radicand, self.pi_half_exp))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        r = self.rational
        return f"{r.numerator}/{r.denominator} * sqrt({self.radicand}) * pi^({self.pi_half_exp}/2)"


def _coerce(x) -> ExactReal | None:
    if isinstance(x, ExactReal):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactReal(Fraction(x))
    return None


def normalize(rational: Rational | int, radicand: int = 1, pi_half_exp: int = 0) -> ExactReal:
    """Canonical form of ``rational * sqrt(radicand) * pi^(pi_half_exp/2)``.

    >>> normalize(1, 8, 0)
    ExactReal(rational=Fraction(2, 1), radicand=2, pi_half_exp=0)
    """
    r = Fraction(rational)
    if r == 0:
        return ExactReal(Fraction(0), 1, 0)
    s, u = _split_square(int(radicand))
    return ExactReal(r * s, u, int(pi_half_exp))


def mul(x: ExactReal, y: ExactReal) -> ExactReal:
    if x.is_zero() or y.is_zero():
        return ExactReal(Fraction(0))
    g = gcd(x.radicand, y.radicand)
    # sqrt(a) sqrt(b) = g sqrt(a/g * b/g) for squarefree a, b with gcd g
    return ExactReal(
        x.rational * y.rational * g,
        (x.radicand // g) * (y.radicand // g),
        x.pi_half_exp + y.pi_half_exp,
    )


def add(x: ExactReal, y: ExactReal) -> ExactReal:
    if y.is_zero():
        return x
    if x.is_zero():
        return y
    if x.kind != y.kind:
        raise KindMismatch(f"cannot add {x} and {y}: kinds {x.kind} != {y.kind}")
    return normalize(x.rational + y.rational, x.radicand, x.pi_half_exp)


def sqrt_rational(r: Rational | int) -> ExactReal:
    """Exact square root of a nonnegative rational, e.g. sqrt(3/2) = 1/2*sqrt(6)."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    # sqrt(p/q) = sqrt(p*q) / q
    return normalize(Fraction(1, r.denominator), r.numerator * r.denominator, 0)


def to_float(x: ExactReal, precision_bits: int = 53):
    """Evaluate ``x`` as an mpmath float carrying ``precision_bits`` bits."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    work = mp_context(precision_bits + 16)
    out = mp_context(precision_bits)
    v = work.mpf(x.rational.numerator) / x.rational.denominator
    if x.radicand != 1:
        v *= work.sqrt(x.radicand)
    if x.pi_half_exp:
        v *= work.sqrt(work.pi) ** x.pi_half_exp
    return out.mpf(v)


_TEXT = re.compile(
    r"^\s*(?P<p>[+-]?\d+)(?:/(?P<q>\d+))?"
    r"(?:\s*\*\s*sqrt\((?P<t>\d+)\))?"
    r"(?:\s*\*\s*pi\^\((?P<a>[+-]?\d+)/2\))?\s*$"
)


def parse(text: str) -> ExactReal:
    """Inverse of ``str(ExactReal)``; also accepts the short forms ``p/q`` and ``p``."""
    m = _TEXT.match(text)
    if not m:
        raise ValueError(f"not an exact value: {text!r}")
    r = Fraction(int(m["p"]), int(m["q"] or 1))
    return normalize(r, int(m["t"] or 1), int(m["a"] or 0))
