"""Seeded random instances for property suites."""

from __future__ import annotations

import itertools
import random
from typing import List

from .groebner import Ideal
from .linalg import monomials_up_to
from .polynomials import Polynomial, RingContext, frobenius_power


def random_polynomial(ctx: RingContext, rng: random.Random, degree: int, terms: int = 4) -> Polynomial:
    monos = monomials_up_to(ctx.n, degree)
    k = rng.randint(0, min(terms, len(monos)))
    chosen = rng.sample(monos, k)
    return Polynomial(ctx, {m: rng.randrange(1, ctx.p) for m in chosen})


def random_nonzero(ctx: RingContext, rng: random.Random, degree: int, terms: int = 4) -> Polynomial:
    while True:
        f = random_polynomial(ctx, rng, degree, terms)
        if not f.is_zero():
            return f


def random_twist_scalar(ctx: RingContext, rng: random.Random, e: int, degree: int = 1) -> Polynomial:
    """Random s = sum_{c0 < p} x^{c0} t_{c0}^{p^{e+1}}, the scalars the level-e twist commutes with."""
    p = ctx.p
    s = ctx.zero()
    for c0 in itertools.product(range(p), repeat=ctx.n):
        s = s + frobenius_power(random_polynomial(ctx, rng, degree, 2), e + 1).mul_term(c0, 1)
    return s


def random_ideal(ctx: RingContext, rng: random.Random, max_gens: int = 3, degree: int = 5, terms: int = 3) -> Ideal:
    count = rng.randint(1, max_gens)
    return Ideal(ctx, [random_nonzero(ctx, rng, degree, terms) for _ in range(count)])


def random_context(rng: random.Random, primes=(2, 3, 5), max_n: int = 3) -> RingContext:
    n = rng.randint(1, max_n)
    return RingContext(rng.choice(primes), ("x", "y", "z")[:n])


def sample_many(fn, count: int) -> List:
    return [fn() for _ in range(count)]
