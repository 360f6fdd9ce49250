"""Exact scalars: rationals, factorials, Bernoulli numbers, cusp-form dimensions."""

from __future__ import annotations

import math
import threading
from fractions import Fraction

Rational = Fraction

_bernoulli_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = []


def _extend_bernoulli(n: int) -> None:
    # Akiyama-Tanigawa produces B_n with B_1 = +1/2; the sign of B_1 is
    # flipped on lookup.
    cache = _bernoulli_cache
    for m in range(len(cache), n + 1):
        row = [Fraction(1, j + 1) for j in range(m + 1)]
        for top in range(m, 0, -1):
            for j in range(top):
                row[j] = (j + 1) * (row[j] - row[j + 1])
        cache.append(row[0])


def bernoulli(n: int) -> Fraction:
    """B_n for the generating function T/(e^T - 1), so B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli: n must be non-negative")
    if n >= 3 and n % 2:
        return Fraction(0)
    with _bernoulli_lock:
        if n >= len(_bernoulli_cache):
            _extend_bernoulli(n)
        b = _bernoulli_cache[n]
    return -b if n == 1 else b


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial({n}, {k}) out of range")
    return math.comb(n, k)


def dim_cusp_forms(k: int) -> int:
    """Dimension of level-one cusp forms of even weight ``k >= 4``."""
    if k % 2 or k < 4:
        raise ValueError(f"weight must be even and >= 4, got {k}")
    d = k // 12
    return d - 1 if k % 12 == 2 else d


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    """Lowest-terms string ``"p/q"``, or ``"n"`` for integers."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def normalize(x):
    """Collapse integral Fractions to ``int`` (cheaper downstream arithmetic)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x
