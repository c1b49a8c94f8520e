"""Prime-exponent vectors for exact multiplicative arithmetic.

A positive rational is encoded by the map prime -> exponent of its
factorization; log of the rational is then an exact integer combination
of the logs of primes, which are linearly independent over Q by unique
factorization.  Factoring is trial division up to 10**6; a surviving
cofactor raises, as advertised.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import FactorLimitError

TRIAL_LIMIT = 10**6


def factorize(n: int, limit: int = TRIAL_LIMIT) -> dict[int, int]:
    """Factor a positive integer by trial division up to `limit`."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2  # alternate 5,7,11,13,... (skip multiples of 2 and 3)
    while p * p <= n and p <= limit:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        if n > limit:
            raise FactorLimitError(f"prime factor of {n} exceeds trial-division bound {limit}")
        out[n] = out.get(n, 0) + 1
    return out


def exponent_vector(q: Fraction | int) -> dict[int, int]:
    """Prime exponents of a positive rational (denominator counted negative)."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("exponent_vector expects a positive rational")
    vec = dict(factorize(q.numerator))
    for p, e in factorize(q.denominator).items():
        vec[p] = vec.get(p, 0) - e
        if vec[p] == 0:
            del vec[p]
    return vec
