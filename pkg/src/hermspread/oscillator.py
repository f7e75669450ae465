"""Harmonic-oscillator eigenstates from the Hermite results by rescaling.

The stationary state of ``V(x) = lam^2 x^2 / 2`` with quantum number ``n``
has density ``rho_n^HO(x) = sqrt(lam) rho_n(sqrt(lam) x)``, so every
quantity follows from the Hermite one by a power of ``lam``:

* lengths pick up ``lam^(-1/2)``,
* ``<x^k>`` picks up ``lam^(-k/2)``,
* ``W_q`` picks up ``lam^((q-1)/2)``,
* the Fisher information picks up ``lam``,
* the Shannon entropy shifts by ``-ln sqrt(lam)``.

A rational ``lam`` keeps exact quantities exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .entropic import entropic_moment, renyi_length
from .exactreal import ExactReal, mp_context, sqrt_rational
from .hermite import fisher_information, fisher_length, moment, standard_deviation
from .quadrature import QuadratureConfig
from .shannon import shannon_entropy

__all__ = [
    "OscillatorParams",
    "OscillatorLengths",
    "ho_moment",
    "ho_entropic_moment",
    "ho_fisher_information",
    "ho_shannon_entropy",
    "ho_lengths",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator strength ``lam`` (inverse length squared).

    Integers and fractions are stored as :class:`Fraction` and give exact
    results; floats stay floats.
    """

    lam: Fraction | float

    def __post_init__(self) -> None:
        lam = self.lam
        if isinstance(lam, str):
            lam = Fraction(lam)
        elif isinstance(lam, Rational):
            lam = Fraction(lam)
        elif not isinstance(lam, float):
            raise TypeError(f"lam must be rational or float, got {type(lam).__name__}")
        if not lam > 0:
            raise ValueError("lam must be positive")
        object.__setattr__(self, "lam", lam)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.lam, Fraction)

    def length_factor(self, precision_bits: int = 53):
        """``lam^(-1/2)``; an :class:`ExactReal` when ``lam`` is rational."""
        if self.is_exact:
            return sqrt_rational(1 / self.lam)
        ctx = mp_context(precision_bits)
        return 1 / ctx.sqrt(self.lam)


def _scale_length(value, params: OscillatorParams, precision_bits: int):
    factor = params.length_factor(precision_bits)
    if isinstance(value, ExactReal):
        if isinstance(factor, ExactReal):
            return value * factor
        value = value.to_float(precision_bits)
    elif isinstance(factor, ExactReal):
        factor = factor.to_float(precision_bits)
    return mp_context(precision_bits).mpf(value * factor)


def ho_moment(n: int, k: int, params: OscillatorParams):
    """``<x^k>`` of the oscillator state: ``lam^(-k/2) <x^k>_n``.

    Odd moments vanish, so only integer powers of ``lam`` ever occur and a
    rational ``lam`` gives a :class:`Fraction`.
    """
    base = moment(n, k)
    if k % 2:
        return Fraction(0) if params.is_exact else 0.0
    if params.is_exact:
        return base / params.lam ** (k // 2)
    return float(base) / params.lam ** (k // 2)


def ho_entropic_moment(n: int, q: int, params: OscillatorParams, precision_bits: int = 53):
    """``W_q`` of the oscillator state: ``lam^((q-1)/2) W_q[rho_n]``."""
    w = entropic_moment(n, q).value
    if params.is_exact:
        return w * sqrt_rational(params.lam) ** (q - 1)
    ctx = mp_context(precision_bits)
    return w.to_float(precision_bits) * ctx.mpf(params.lam) ** (ctx.mpf(q - 1) / 2)


def ho_fisher_information(n: int, params: OscillatorParams):
    if params.is_exact:
        return params.lam * fisher_information(n)
    return params.lam * float(fisher_information(n))


def ho_shannon_entropy(n: int, params: OscillatorParams, cfg: QuadratureConfig | None = None):
    """``S[rho_n] - ln sqrt(lam)`` in nats."""
    cfg = cfg or QuadratureConfig()
    ctx = mp_context(cfg.precision_bits)
    s = shannon_entropy(n, cfg).entropy
    lam = params.lam
    lam_mp = ctx.mpf(lam.numerator) / lam.denominator if params.is_exact else ctx.mpf(lam)
    return s - ctx.log(lam_mp) / 2


@dataclass(frozen=True)
class OscillatorLengths:
    """Spreading lengths of the oscillator state ``n``.

    ``std_dev``, ``renyi[2]`` and ``fisher_length`` are :class:`ExactReal`
    for rational ``lam``; the others are mpmath floats.
    """

    n: int
    params: OscillatorParams
    std_dev: object
    renyi: dict
    shannon: object
    fisher_length: object


def ho_lengths(
    n: int,
    params: OscillatorParams,
    cfg: QuadratureConfig | None = None,
    orders: tuple[int, ...] = (2, 3, 4, 5),
) -> OscillatorLengths:
    """All direct spreading lengths, each ``lam^(-1/2)`` times the Hermite one."""
    cfg = cfg or QuadratureConfig()
    bits = cfg.precision_bits
    renyi = {}
    for q in orders:
        base = entropic_moment(n, 2).value.reciprocal() if q == 2 else renyi_length(n, q, bits)
        renyi[q] = _scale_length(base, params, bits)
    shannon = _scale_length(shannon_entropy(n, cfg).length, params, bits)
    return OscillatorLengths(
        n=n,
        params=params,
        std_dev=_scale_length(standard_deviation(n), params, bits),
        renyi=renyi,
        shannon=shannon,
        fisher_length=_scale_length(fisher_length(n), params, bits),
    )
