"""Seeded random elements of Q(beta) inside a closed interval.

Used by the property suites and by the CLI demos that take ``--seed``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import ceil, floor

from .algebraic import AlgebraicNumber, FieldElement


def random_in(
    rng: random.Random,
    beta: AlgebraicNumber,
    lo: FieldElement,
    hi: FieldElement,
    max_den: int = 50,
    *,
    open_interval: bool = False,
    tries: int = 1000,
) -> FieldElement:
    """Sample ``(c0 + c1*beta)/q`` in ``[lo, hi]`` with ``q <= max_den`` and ``c1`` in {-1, 0, 1}.

    ``q`` and ``c1`` are drawn first, then ``c0`` uniformly among the integers
    that keep the value inside the interval.
    """
    b = beta.gen
    for _ in range(tries):
        q = rng.randint(1, max_den)
        c1 = rng.choice((-1, 0, 1)) if beta.degree > 1 else 0
        shift = c1 * b
        # c0 ranges over [q*lo - c1*beta, q*hi - c1*beta]
        lo_val = q * lo - shift
        hi_val = q * hi - shift
        a = ceil(lo_val.approximate(Fraction(1, 2**40))[0])
        z = floor(hi_val.approximate(Fraction(1, 2**40))[1])
        c0_lo, c0_hi = a - 1, z + 1
        while c0_lo <= c0_hi and not (lo_val <= c0_lo):
            c0_lo += 1
        while c0_hi >= c0_lo and not (c0_hi <= hi_val):
            c0_hi -= 1
        if open_interval:
            if c0_lo == lo_val:
                c0_lo += 1
            if c0_hi == hi_val:
                c0_hi -= 1
        if c0_lo > c0_hi:
            continue
        c0 = rng.randint(c0_lo, c0_hi)
        return (shift + c0) / q
    raise RuntimeError("could not sample a point in the interval")


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 50) -> Fraction:
    """A rational with denominator ``<= max_den`` in ``[lo, hi]``."""
    for _ in range(1000):
        q = rng.randint(1, max_den)
        a, z = ceil(lo * q), floor(hi * q)
        if a <= z:
            return Fraction(rng.randint(a, z), q)
    raise RuntimeError("could not sample a rational in the interval")
