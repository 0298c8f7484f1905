from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def _table(k: int) -> tuple[Fraction, ...]:
    if k == 0:
        return (Fraction(1),)
    prev = _table(k - 1)
    # sum_{j<=k} C(k+1, j) B_j = 0
    s = sum((comb(k + 1, j) * b for j, b in enumerate(prev)), Fraction(0))
    return prev + (-s / (k + 1),)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("Bernoulli index must be non-negative")
    b = _table(k)[k]
    if k % 2 == 0:
        assert b != 0, "even Bernoulli numbers never vanish"
    return b
