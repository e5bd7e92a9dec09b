"""Level-e differential operators as explicit matrices.

An operator delta in End_{R^{p^e}}(R) is stored by its action on the
Frobenius basis: column ``a`` holds the level-e coefficients of
delta(x^a).  In these coordinates R acts on F^e_*R = R^{p^{en}} and delta is an
ordinary matrix over R, so composition is matrix multiplication.

These routines are deliberately brute force; they serve as the oracle for
the ideal-theoretic fast paths in :mod:`frobdesc.frobenius` and
:mod:`frobdesc.localization`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .frobenius import (
    FrobeniusBasis,
    bracket_power_of_root,
    decompose,
    recompose,
    root_ideal,
)
from .groebner import GREVLEX, Ideal
from .linalg import MonomialIndex, nullspace, span_basis
from .polynomials import ContextMismatch, Polynomial, RingContext, frobenius_power

SIZE_GUARD = 81


class SizeGuardError(RuntimeError):
    """The operator matrix would exceed the configured p^{en} cap."""


class LevelMismatch(ValueError):
    pass


class NotStableError(ValueError):
    """The ideal is not a D^(e)-submodule of R."""


def check_size(basis: FrobeniusBasis, size_guard: Optional[int] = None) -> None:
    cap = SIZE_GUARD if size_guard is None else size_guard
    if basis.rank > cap:
        raise SizeGuardError(
            f"p^(e*n) = {basis.rank} exceeds size guard {cap} (p={basis.ctx.p}, n={basis.ctx.n}, e={basis.e})"
        )


def configure_size_guard(cap: int) -> None:
    global SIZE_GUARD
    SIZE_GUARD = cap


@dataclass(frozen=True)
class DiffOp:
    basis: FrobeniusBasis
    matrix: Tuple[Tuple[Polynomial, ...], ...]  # matrix[b][a]

    @property
    def e(self) -> int:
        return self.basis.e

    @property
    def ctx(self) -> RingContext:
        return self.basis.ctx

    @classmethod
    def from_images(cls, basis: FrobeniusBasis, images: Sequence[Polynomial], size_guard=None) -> "DiffOp":
        """Operator sending the a-th basis monomial to ``images[a]``."""
        check_size(basis, size_guard)
        if len(images) != basis.rank:
            raise ValueError(f"expected {basis.rank} images, got {len(images)}")
        cols = [decompose(img, basis.e).coeffs for img in images]
        rows = tuple(tuple(cols[a][b] for a in range(basis.rank)) for b in range(basis.rank))
        return cls(basis, rows)

    @classmethod
    def identity(cls, ctx: RingContext, e: int, size_guard=None) -> "DiffOp":
        basis = FrobeniusBasis(ctx, e)
        check_size(basis, size_guard)
        r = basis.rank
        one, zero = ctx.one(), ctx.zero()
        return cls(basis, tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r)))

    @classmethod
    def multiplication(cls, r: Polynomial, e: int, size_guard=None) -> "DiffOp":
        basis = FrobeniusBasis(r.ctx, e)
        return cls.from_images(basis, [r.mul_term(a, 1) for a in basis.monomials], size_guard)

    @classmethod
    def matrix_unit(cls, basis: FrobeniusBasis, b: int, a: int, size_guard=None) -> "DiffOp":
        """E_{b,a}: x^a -> x^b, every other basis monomial -> 0."""
        check_size(basis, size_guard)
        ctx = basis.ctx
        one, zero = ctx.one(), ctx.zero()
        r = basis.rank
        return cls(basis, tuple(tuple(one if (i, j) == (b, a) else zero for j in range(r)) for i in range(r)))

    def column(self, a: int) -> Tuple[Polynomial, ...]:
        return tuple(row[a] for row in self.matrix)

    def image(self, a: int) -> Polynomial:
        """delta(x^a) as a polynomial."""
        from .frobenius import FrobeniusDecomposition

        return recompose(FrobeniusDecomposition(self.basis, self.column(a)))

    def to_json(self) -> dict:
        cols = {}
        for a in range(self.basis.rank):
            entries = {self.basis.label(b): str(h) for b, h in enumerate(self.column(a)) if not h.is_zero()}
            cols[self.basis.label(a)] = entries
        return {"e": self.e, "columns": cols}

    @classmethod
    def from_json(cls, ctx: RingContext, data: Mapping, size_guard=None) -> "DiffOp":
        basis = FrobeniusBasis(ctx, int(data["e"]))
        check_size(basis, size_guard)
        r = basis.rank
        m = [[ctx.zero()] * r for _ in range(r)]
        for a_label, col in data["columns"].items():
            a = basis.slot(a_label)
            for b_label, text in col.items():
                m[basis.slot(b_label)][a] = ctx.parse(text)
        return cls(basis, tuple(tuple(row) for row in m))


def _check_level(x, y) -> None:
    if x.basis != y.basis:
        raise LevelMismatch(f"level/context mismatch: e={x.basis.e} vs e={y.basis.e}")


def apply(delta: DiffOp, f: Polynomial) -> Polynomial:
    """delta(f) = sum_a g_a^{p^e} * delta(x^a) for f = sum_a g_a^{p^e} x^a."""
    if f.ctx != delta.ctx:
        raise ContextMismatch(f"{f.ctx} vs {delta.ctx}")
    e = delta.e
    total = f.ctx.zero()
    for a, g in enumerate(decompose(f, e).coeffs):
        if g.is_zero():
            continue
        img = delta.image(a)
        if not img.is_zero():
            total = total + frobenius_power(g, e) * img
    return total


def compose(d1: DiffOp, d2: DiffOp) -> DiffOp:
    """d1 after d2, as the matrix product d1.matrix @ d2.matrix over R."""
    _check_level(d1, d2)
    r = d1.basis.rank
    zero = d1.ctx.zero()
    rows = []
    for b in range(r):
        row = []
        for a in range(r):
            acc = zero
            for m in range(r):
                x, y = d1.matrix[b][m], d2.matrix[m][a]
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        rows.append(tuple(row))
    return DiffOp(d1.basis, tuple(rows))


# -- Hom_R(F^e_*R, R) and the Morita maps --------------------------------------


@dataclass(frozen=True)
class DualElement:
    """phi = sum_a coeffs[a] * pi_a, where pi_a is the a-th Cartier projection."""

    basis: FrobeniusBasis
    coeffs: Tuple[Polynomial, ...]

    @classmethod
    def projection(cls, basis: FrobeniusBasis, a: int) -> "DualElement":
        ctx = basis.ctx
        return cls(basis, tuple(ctx.one() if i == a else ctx.zero() for i in range(basis.rank)))

    @classmethod
    def splitting(cls, ctx: RingContext, e: int) -> "DualElement":
        """pi_1: the projection onto the coefficient of the monomial 1."""
        return cls.projection(FrobeniusBasis(ctx, e), 0)

    def __call__(self, f: Polynomial) -> Polynomial:
        d = decompose(f, self.basis.e)
        total = f.ctx.zero()
        for c, g in zip(self.coeffs, d.coeffs):
            if not c.is_zero() and not g.is_zero():
                total = total + c * g
        return total


def phi_map(a: Polynomial, phi: DualElement, size_guard=None) -> DiffOp:
    """The operator x -> a * phi(x)^{p^e}."""
    if a.ctx != phi.basis.ctx:
        raise ContextMismatch(f"{a.ctx} vs {phi.basis.ctx}")
    basis = phi.basis
    images = [a * frobenius_power(phi(a.ctx.monomial(m)), basis.e) for m in basis.monomials]
    return DiffOp.from_images(basis, images, size_guard)


def psi_map(phi: DualElement, f: Polynomial) -> Polynomial:
    return phi(f)


def psi_inverse(f: Polynomial, e: int) -> Tuple[DualElement, Polynomial]:
    """The preimage pi_1 (x) f^{p^e} of f under psi."""
    return DualElement.splitting(f.ctx, e), frobenius_power(f, e)


# -- change of level --------------------------------------------------------


def embed(delta: DiffOp, size_guard=None) -> DiffOp:
    """The same map viewed as an R^{p^{e+1}}-linear operator."""
    basis = FrobeniusBasis(delta.ctx, delta.e + 1)
    check_size(basis, size_guard)
    ctx = delta.ctx
    return DiffOp.from_images(basis, [apply(delta, ctx.monomial(m)) for m in basis.monomials], size_guard)


def frobenius_twist(delta: DiffOp, size_guard=None) -> DiffOp:
    """Block-diagonal copy of delta at level e+1: x^{c0} r^p -> x^{c0} delta(r)^p for c0 < p.

    R is free over R^p on the monomials x^{c0} with c0 < p, so this fixes the
    operator.  It is a ring map D^(e) -> D^(e+1), and delta'(s r^p) = s delta(r)^p
    holds for every s in the R^{p^{e+1}}-span of those monomials.  For other s
    no operator can satisfy it unless delta is R-linear: with delta(x) = 1,
    delta(1) = 0 over F_2, the pairs (s, r) = (1, x) and (x^2, 1) give the same
    input x^2 but demand the outputs 1 and 0.
    """
    ctx = delta.ctx
    p = ctx.p
    basis = FrobeniusBasis(ctx, delta.e + 1)
    check_size(basis, size_guard)
    images = []
    for c in basis.monomials:
        c0 = tuple(x % p for x in c)
        c1 = tuple(x // p for x in c)
        inner = delta.image(delta.basis.index[c1])
        images.append(frobenius_power(inner, 1).mul_term(c0, 1))
    return DiffOp.from_images(basis, images, size_guard)


# -- J_e, annihilators and orbits ---------------------------------------------


def je_membership(delta: DiffOp) -> bool:
    """delta(1) == 0, i.e. the column of the monomial 1 vanishes."""
    return all(h.is_zero() for h in delta.column(0))


def je_generators(ctx: RingContext, e: int, size_guard=None) -> List[DiffOp]:
    basis = FrobeniusBasis(ctx, e)
    check_size(basis, size_guard)
    return [DiffOp.matrix_unit(basis, b, a) for a in range(1, basis.rank) for b in range(basis.rank)]


@dataclass(frozen=True)
class AnnResult:
    basis: Tuple[Polynomial, ...]
    degree_bound: int
    conclusive: bool


def is_de_stable(K: Ideal, e: int) -> bool:
    """K is a D^(e)-submodule of R iff it equals the bracket power of its root ideal."""
    if e < 1:
        raise ValueError(f"level must be >= 1, got {e}")
    return K == bracket_power_of_root(K, e)


def ann_je(K: Ideal, e: int, degree_bound: int, size_guard=None) -> AnnResult:
    """Elements of K of degree <= degree_bound killed by every operator in J_e.

    Solved as a nullspace problem over F_p: the unknowns are coordinates in a
    basis of K's degree-truncated part, the equations are the coefficients of
    E_{b,a}(m) for all matrix units with a != 1.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    ctx = K.ctx
    gens = je_generators(ctx, e, size_guard)
    if not is_de_stable(K, e):
        raise NotStableError(f"{K} is not stable under D^({e})")
    space = span_basis(ctx, K.degree_part_basis(degree_bound))
    q = ctx.p**e
    root_gb = root_ideal(K, e).groebner_basis(GREVLEX)
    needed = max((q * h.degree() for h in root_gb), default=0)
    conclusive = degree_bound >= needed
    if not space:
        return AnnResult((), degree_bound, conclusive)
    images = [[apply(delta, v) for v in space] for delta in gens]
    index = MonomialIndex()
    for col in images:
        index.register(col)
    rows = []
    for col in images:
        vecs = [index.vector(w) for w in col]
        for pos in range(len(index.monomials)):
            row = [v[pos] for v in vecs]
            if any(row):
                rows.append(row)
    kernel = nullspace(rows, len(space), ctx.p)
    members = []
    for vec in kernel:
        m = ctx.zero()
        for c, v in zip(vec, space):
            if c:
                m = m + v.scale(c)
        members.append(m)
    return AnnResult(span_basis(ctx, members), degree_bound, conclusive)


def frobenius_images_within(K: Ideal, e: int, degree_bound: int) -> Tuple[Polynomial, ...]:
    """F_p-basis of {h^{p^e} : h in root_ideal(K, e), deg h^{p^e} <= degree_bound}."""
    q = K.ctx.p**e
    root = Ideal(K.ctx, root_ideal(K, e).groebner_basis())
    return span_basis(K.ctx, [frobenius_power(h, e) for h in root.degree_part_basis(degree_bound // q)])


def splitting_images_within(K: Ideal, e: int, degree_bound: int) -> Tuple[Polynomial, ...]:
    """F_p-basis of the image of K's degree-truncated part under F^e o pi_e."""
    from .frobenius import splitting_compose

    return span_basis(K.ctx, [splitting_compose(k, e) for k in K.degree_part_basis(degree_bound)])


def de_orbit(u: Polynomial, e: int) -> Ideal:
    """D^(e) * u, the ideal generated by the p^e-th powers of u's Cartier coefficients."""
    return bracket_power_of_root(Ideal(u.ctx, [u]), e)


def de_orbit_exhaustive(u: Polynomial, e: int, size_guard=None) -> Ideal:
    """D^(e) * u from the images of u under every matrix unit E_{b,a}."""
    basis = FrobeniusBasis(u.ctx, e)
    check_size(basis, size_guard)
    images = []
    for a in range(basis.rank):
        for b in range(basis.rank):
            images.append(apply(DiffOp.matrix_unit(basis, b, a), u))
    return Ideal(u.ctx, images)


def random_diffop(basis: FrobeniusBasis, rng: random.Random, degree: int = 2, density: float = 0.5, size_guard=None) -> DiffOp:
    from .randomgen import random_polynomial

    check_size(basis, size_guard)
    ctx = basis.ctx
    r = basis.rank
    rows = tuple(
        tuple(random_polynomial(ctx, rng, degree) if rng.random() < density else ctx.zero() for _ in range(r))
        for _ in range(r)
    )
    return DiffOp(basis, rows)
