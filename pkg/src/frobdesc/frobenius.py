"""Frobenius decomposition of F_p[x] over its subring of p^e-th powers.

R is free over R^{p^e} on the monomials x^a with 0 <= a_i < p^e, so every
f has a unique expansion f = sum_a g_a^{p^e} x^a.  The coefficient maps
f -> g_a (Cartier projections) drive the root ideal computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Tuple

from .groebner import GREVLEX, Ideal, bracket_power
from .polynomials import (
    ContextMismatch,
    Monomial,
    Polynomial,
    RingContext,
    format_monomial,
    frobenius_power,
    parse_monomial,
)


@dataclass(frozen=True)
class FrobeniusBasis:
    """Monomials x^a with 0 <= a_i < p^e, lexicographically ordered (x^0 first)."""

    ctx: RingContext
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError(f"level must be >= 0, got {self.e}")

    @property
    def q(self) -> int:
        return self.ctx.p**self.e

    @property
    def rank(self) -> int:
        return self.q**self.ctx.n

    @cached_property
    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(itertools.product(range(self.q), repeat=self.ctx.n))

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def slot(self, a) -> int:
        """Position of the basis monomial ``a`` (exponent tuple or monomial string)."""
        if isinstance(a, str):
            a = parse_monomial(self.ctx, a)
        elif isinstance(a, Polynomial):
            if len(a.terms) != 1:
                raise ValueError(f"{a} is not a monomial")
            a = next(iter(a.terms))
        a = tuple(a)
        if len(a) != self.ctx.n or any(not 0 <= x < self.q for x in a):
            raise ValueError(f"{a} is outside the level-{self.e} basis (exponents must lie in [0, {self.q}))")
        return self.index[a]

    def label(self, i: int) -> str:
        return format_monomial(self.ctx, self.monomials[i])

    def __len__(self):
        return self.rank


@dataclass(frozen=True)
class FrobeniusDecomposition:
    basis: FrobeniusBasis
    coeffs: Tuple[Polynomial, ...]

    def __getitem__(self, a) -> Polynomial:
        return self.coeffs[self.basis.slot(a)]

    def items(self):
        return zip(self.basis.monomials, self.coeffs)

    def nonzero(self) -> List[Polynomial]:
        return [g for g in self.coeffs if not g.is_zero()]

    def to_json(self) -> dict:
        return {
            "e": self.basis.e,
            "coeffs": {self.basis.label(i): str(g) for i, g in enumerate(self.coeffs)},
        }

    @classmethod
    def from_json(cls, ctx: RingContext, data: Mapping) -> "FrobeniusDecomposition":
        basis = FrobeniusBasis(ctx, int(data["e"]))
        coeffs = [ctx.zero()] * basis.rank
        for label, text in data["coeffs"].items():
            coeffs[basis.slot(label)] = ctx.parse(text)
        return cls(basis, tuple(coeffs))


def decompose(f: Polynomial, e: int) -> FrobeniusDecomposition:
    basis = FrobeniusBasis(f.ctx, e)
    q = basis.q
    buckets: List[Dict[Monomial, int]] = [dict() for _ in range(basis.rank)]
    index = basis.index
    for exp, c in f.terms.items():
        quo, rem = zip(*(divmod(x, q) for x in exp))
        buckets[index[rem]][quo] = c
    ctx = f.ctx
    return FrobeniusDecomposition(basis, tuple(Polynomial._raw(ctx, b) for b in buckets))


def recompose(d: FrobeniusDecomposition) -> Polynomial:
    ctx = d.basis.ctx
    total = ctx.zero()
    for a, g in d.items():
        if not g.is_zero():
            total = total + frobenius_power(g, d.basis.e).mul_term(a, 1)
    return total


def cartier_project(f: Polynomial, a, e: int) -> Polynomial:
    """Coefficient g_a of x^a in the level-e expansion of ``f``."""
    basis = FrobeniusBasis(f.ctx, e)
    target = basis.monomials[basis.slot(a)]
    q = basis.q
    out = {}
    for exp, c in f.terms.items():
        if all(x % q == t for x, t in zip(exp, target)):
            out[tuple(x // q for x in exp)] = c
    return Polynomial._raw(f.ctx, out)


def splitting_compose(f: Polynomial, e: int) -> Polynomial:
    """Keep only the terms of ``f`` whose exponents are divisible by p^e."""
    return frobenius_power(cartier_project(f, (0,) * f.ctx.n, e), e)


def root_ideal(J: Ideal, e: int) -> Ideal:
    """Smallest ideal I with J contained in I^{[p^e]}.

    Generated by all Cartier coefficients of the generators of ``J``; not
    reduced until first compared.
    """
    if e < 0:
        raise ValueError(f"level must be >= 0, got {e}")
    if e == 0:
        return J
    gens = []
    for g in J.generators:
        gens.extend(decompose(g, e).nonzero())
    return Ideal(J.ctx, gens)


def bracket_power_of_root(J: Ideal, e: int) -> Ideal:
    """(root_ideal(J, e))^{[p^e]}, the smallest D^(e)-stable ideal containing J."""
    root = root_ideal(J, e)
    return bracket_power(Ideal(J.ctx, root.groebner_basis()), e)


def root_ideal_of_multiple(H: Ideal, f: Polynomial, k: int, e: int) -> Ideal:
    """``root_ideal(f^k * H, e)`` without forming ``f^k``.

    Uses root_ideal(J, e) = root_ideal(root_ideal(J, 1), e - 1) together with
    root_ideal(g^p * J, 1) = g * root_ideal(J, 1), peeling one base-p digit of
    ``k`` per step.
    """
    if H.ctx != f.ctx:
        raise ContextMismatch(f"{H.ctx} vs {f.ctx}")
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    p = f.ctx.p
    current = H
    for _ in range(e):
        k, d = divmod(k, p)
        fd = f**d
        step = root_ideal(Ideal(f.ctx, [fd * g for g in current.groebner_basis()]), 1)
        current = Ideal(f.ctx, step.groebner_basis())
    if k:
        current = current.scaled(f**k)
    return current


def in_bracket_power(g: Polynomial, I: Ideal, e: int) -> bool:
    """Membership in I^{[p^e]} via freeness: every Cartier coefficient of g lies in I."""
    return all(c in I for c in decompose(g, e).nonzero())


def frobenius_root_chain(f: Polynomial, e_max: int) -> List[Ideal]:
    """[J_1, ..., J_{e_max}] with J_e = root_ideal((f^{p^e - 1}), e).

    Computed through J_e = root_ideal(f^{p-1} * J_{e-1}, 1), J_0 = (1).
    """
    ctx = f.ctx
    fp = f ** (ctx.p - 1)
    out = []
    current = Ideal.unit(ctx)
    for _ in range(e_max):
        step = root_ideal(Ideal(ctx, [fp * g for g in current.groebner_basis(GREVLEX)]), 1)
        current = Ideal(ctx, step.groebner_basis())
        out.append(current)
    return out
