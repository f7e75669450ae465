"""Bell polynomials, constrained partitions and powers of polynomials.

All arithmetic is exact (``int`` / ``Fraction``).  The partition-sum form of
the partial Bell polynomial is kept as a small-instance oracle; production
code uses the convolution recurrence and plain repeated multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "DensePolynomial",
    "PartitionConstraint",
    "enumerate_partitions",
    "count_partitions",
    "bell_enumerated",
    "bell_recurrence",
    "bell_table",
    "poly_mul",
    "poly_power_bell",
    "poly_power_direct",
]


def _clean(x):
    # keep integers as int so that integer polynomials stay on the fast path
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class DensePolynomial:
    """Univariate polynomial ``sum(coeffs[k] * x**k)`` with exact coefficients.

    Trailing zeros are stripped, so ``degree`` is the index of the last
    nonzero coefficient (``-1`` for the zero polynomial).
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence = ()):
        cs = [_clean(c if isinstance(c, (int, Fraction)) else Fraction(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __mul__(self, other: "DensePolynomial") -> "DensePolynomial":
        return DensePolynomial(poly_mul(self.coeffs, other.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_mul(a: Sequence, b: Sequence) -> list:
    """Full convolution of two coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def poly_power_direct(y: DensePolynomial, p: int) -> DensePolynomial:
    """``y**p`` by ``p - 1`` successive multiplications."""
    if p < 1:
        raise ValueError("p must be >= 1")
    acc = list(y.coeffs)
    for _ in range(p - 1):
        acc = poly_mul(acc, y.coeffs)
    return DensePolynomial(acc)


# -- partitions ---------------------------------------------------------------


@dataclass(frozen=True)
class PartitionConstraint:
    """Multiplicities ``j_1..j_{m-l+1}`` with ``sum j_i = l`` and ``sum i*j_i = m``."""

    m: int
    l: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.l < 0:
            raise ValueError("m and l must be nonnegative")

    @property
    def max_index(self) -> int:
        return self.m - self.l + 1


def enumerate_partitions(c: PartitionConstraint) -> Iterator[tuple[int, ...]]:
    """Yield every multiplicity vector satisfying ``c``, in lexicographic order.

    Each vector has length ``c.max_index``; entry ``i-1`` is the number of
    parts equal to ``i``.  Infeasible constraints (``m < l``) yield nothing.
    """
    size = c.max_index
    if size < 1:
        return
    js = [0] * size

    def rec(i: int, parts_left: int, weight_left: int) -> Iterator[tuple[int, ...]]:
        # i is the 1-based part size being assigned
        if i > size:
            if parts_left == 0 and weight_left == 0:
                yield tuple(js)
            return
        # remaining larger parts contribute at least (i+1) each if i is skipped
        hi = min(parts_left, weight_left // i)
        for j in range(hi + 1):
            rest_parts = parts_left - j
            rest_weight = weight_left - i * j
            if rest_parts == 0 and rest_weight != 0:
                continue
            if rest_parts and (i + 1) * rest_parts > rest_weight:
                continue
            if rest_parts and i == size:
                continue
            js[i - 1] = j
            yield from rec(i + 1, rest_parts, rest_weight)
        js[i - 1] = 0

    yield from rec(1, c.l, c.m)


def count_partitions(m: int, l: int) -> int:
    """Number of partitions of ``m`` into exactly ``l`` positive parts."""
    table = [[0] * (l + 1) for _ in range(m + 1)]
    table[0][0] = 1
    for mm in range(1, m + 1):
        for ll in range(1, min(mm, l) + 1):
            table[mm][ll] = table[mm - 1][ll - 1] + table[mm - ll][ll]
    return table[m][l]


def bell_enumerated(m: int, l: int, args: Sequence) -> Fraction:
    """Partial Bell polynomial ``B_{m,l}`` summed over partitions.

    ``args[i-1]`` is the argument ``c_i``; it must hold at least
    ``m - l + 1`` entries when the partition set is nonempty.
    """
    total = Fraction(0)
    mf = factorial(m)
    for js in enumerate_partitions(PartitionConstraint(m, l)):
        term = Fraction(mf)
        for i, j in enumerate(js, start=1):
            if j:
                term *= Fraction(args[i - 1], factorial(i)) ** j / factorial(j)
        total += term
    return total


def bell_table(m_max: int, l_max: int, args: Sequence) -> list[list]:
    """``B[m][l]`` for all ``m <= m_max``, ``l <= l_max``.

    Uses ``B_{m,l} = sum_i C(m-1, i-1) x_i B_{m-i,l-1}``; missing arguments
    beyond ``len(args)`` count as zero.
    """
    x = [0] + [_clean(Fraction(a)) if not isinstance(a, int) else a for a in args]
    B = [[0] * (l_max + 1) for _ in range(m_max + 1)]
    B[0][0] = 1
    for l in range(1, l_max + 1):
        for m in range(l, m_max + 1):
            s = 0
            for i in range(1, min(m - l + 1, len(x) - 1) + 1):
                prev = B[m - i][l - 1]
                if prev and x[i]:
                    s += comb(m - 1, i - 1) * x[i] * prev
            B[m][l] = s
    return B


def bell_recurrence(m: int, l: int, args: Sequence):
    """``B_{m,l}(args)`` via the convolution recurrence (no partition explosion)."""
    if l > m:
        return 0
    return bell_table(m, l, args[: m - l + 1])[m][l]


def poly_power_bell(y: DensePolynomial, p: int) -> DensePolynomial:
    """``y**p`` with coefficients ``p!/(k+p)! * B_{k+p,p}(c_0, 2!c_1, ..., (k+1)!c_k)``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if y.is_zero():
        return DensePolynomial()
    n = y.degree
    top = n * p
    args = [factorial(i + 1) * y[i] for i in range(top + 1)]
    B = bell_table(top + p, p, args)
    pf = factorial(p)
    return DensePolynomial(
        [Fraction(pf * B[k + p][p]) / factorial(k + p) for k in range(top + 1)]
    )
