"""Seeded random rational data for the exact oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from .fiber_algebra import Covector

DEFAULT_SEED = 0x5EED

_NONZERO = [k for k in range(-9, 10) if k]


def random_rational(rng: random.Random) -> Fraction:
    """num/den with both drawn from [-9, 9] minus zero."""
    return Fraction(rng.choice(_NONZERO), rng.choice(_NONZERO))


def random_covector(rng: random.Random, n: int = 4) -> Covector:
    return Covector([random_rational(rng) for _ in range(n)])


def rational_sphere_point(rng: random.Random) -> tuple:
    """Rational point on the unit 2-sphere by inverse stereographic projection."""
    p, q = random_rational(rng), random_rational(rng)
    r = p * p + q * q
    return (2 * p / (r + 1), 2 * q / (r + 1), (r - 1) / (r + 1))


def random_tangential(rng: random.Random) -> Covector:
    """Unit covector orthogonal to e_4 with rational components."""
    x, y, z = rational_sphere_point(rng)
    return Covector([x, y, z, 0])
