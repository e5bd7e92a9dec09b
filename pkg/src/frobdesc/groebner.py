"""Ideals of F_p[x_1..x_n] and Buchberger's algorithm.

Every ideal comparison in the package goes through reduced Groebner bases
under one fixed order (grevlex by default), which turns equality into a
canonical-form comparison.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .polynomials import (
    ContextMismatch,
    Monomial,
    Polynomial,
    RingContext,
    divides_monomial,
    frobenius_power,
    grevlex_key,
    lex_key,
)


class ResourceLimitError(RuntimeError):
    """A configured bound on S-pairs or degree was exceeded."""


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unsupported monomial order {self.kind!r}")

    @property
    def key(self) -> Callable[[Monomial], object]:
        return grevlex_key if self.kind == "grevlex" else lex_key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass
class Limits:
    max_spairs: int = 200_000
    max_degree: int = 100_000


LIMITS = Limits()


def configure_limits(max_spairs: Optional[int] = None, max_degree: Optional[int] = None) -> Limits:
    """Update the process-wide resource bounds used by :func:`groebner_basis`."""
    if max_spairs is not None:
        LIMITS.max_spairs = max_spairs
    if max_degree is not None:
        LIMITS.max_degree = max_degree
    return LIMITS


# -- kernels on raw term dicts ------------------------------------------------


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: Polynomial, key) -> Polynomial:
    _, lc = f.leading(key)
    return f.scale(pow(lc, -1, f.ctx.p)) if lc != 1 else f


def _reduce(terms: Dict[Monomial, int], basis: Sequence[Tuple[Monomial, int, Dict[Monomial, int]]], key, p: int, full: bool = True):
    """Divide ``terms`` by ``basis``; returns the remainder dict.

    ``basis`` entries are ``(lead, lead_coeff, tail_terms)``. With
    ``full=False`` only the leading term is reduced (top reduction).
    """
    rem = dict(terms)
    out: Dict[Monomial, int] = {}
    while rem:
        lead = max(rem, key=key)
        c = rem[lead]
        for g_lead, g_lc, g_tail in basis:
            if divides_monomial(g_lead, lead):
                shift = tuple(x - y for x, y in zip(lead, g_lead))
                factor = c * pow(g_lc, -1, p) % p
                del rem[lead]
                for exp, v in g_tail.items():
                    m = tuple(x + y for x, y in zip(exp, shift))
                    s = (rem.get(m, 0) - factor * v) % p
                    if s:
                        rem[m] = s
                    else:
                        rem.pop(m, None)
                break
        else:
            if not full:
                out.update(rem)
                return out
            out[lead] = c
            del rem[lead]
    return out


def _entry(f: Polynomial, key):
    lead, lc = f.leading(key)
    tail = {e: c for e, c in f.terms.items() if e != lead}
    return lead, lc, tail


def _interreduce(polys: Iterable[Polynomial], key) -> List[Polynomial]:
    """Reduced basis from a Groebner basis: drop redundant leads, reduce tails, make monic."""
    polys = [_monic(f, key) for f in polys if not f.is_zero()]
    polys.sort(key=lambda f: key(f.leading(key)[0]))
    minimal: List[Polynomial] = []
    for f in polys:
        lead = f.leading(key)[0]
        if not any(divides_monomial(g.leading(key)[0], lead) for g in minimal):
            minimal.append(f)
    if not minimal:
        return []
    ctx = minimal[0].ctx
    reduced = []
    for i, f in enumerate(minimal):
        others = [_entry(g, key) for j, g in enumerate(minimal) if j != i]
        lead, lc, tail = _entry(f, key)
        tail_nf = _reduce(tail, others, key, ctx.p)
        tail_nf[lead] = lc
        reduced.append(Polynomial._raw(ctx, tail_nf))
    reduced.sort(key=lambda f: key(f.leading(key)[0]), reverse=True)
    return reduced


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX, limits: Optional[Limits] = None) -> List[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    Pairs are processed by increasing sugar degree (ties broken by the
    order on the lcm); pairs with coprime leading monomials are skipped.
    The result is sorted by descending leading monomial.
    """
    limits = limits or LIMITS
    key = order.key
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    ctx = gens[0].ctx
    p = ctx.p
    for g in gens:
        if g.degree() > limits.max_degree:
            raise ResourceLimitError(f"generator degree {g.degree()} exceeds max_degree={limits.max_degree}")
    if any(g.is_constant() for g in gens):
        return [ctx.one()]

    basis: List[Polynomial] = []
    entries: List[Tuple[Monomial, int, Dict[Monomial, int]]] = []
    sugar: List[int] = []
    pairs: list = []
    counter = itertools.count()

    def add(f: Polynomial, s: int) -> None:
        f = _monic(f, key)
        idx = len(basis)
        basis.append(f)
        entries.append(_entry(f, key))
        sugar.append(s)
        lead = entries[idx][0]
        for j in range(idx):
            lj = entries[j][0]
            lcm = _lcm(lead, lj)
            if all(a == 0 or b == 0 for a, b in zip(lead, lj)):
                continue
            deg = sum(lcm)
            if deg > limits.max_degree:
                raise ResourceLimitError(f"S-pair degree {deg} exceeds max_degree={limits.max_degree}")
            ps = max(sugar[j] + deg - sum(lj), s + deg - sum(lead))
            heapq.heappush(pairs, (ps, key(lcm), next(counter), j, idx))

    for g in sorted(gens, key=lambda g: (g.degree(), key(g.leading(key)[0]))):
        nf = _reduce(g.terms, entries, key, p)
        if nf:
            add(Polynomial._raw(ctx, nf), g.degree())
            if basis[-1].is_constant():
                return [ctx.one()]

    processed = 0
    while pairs:
        ps, _, _, i, j = heapq.heappop(pairs)
        processed += 1
        if processed > limits.max_spairs:
            raise ResourceLimitError(f"more than max_spairs={limits.max_spairs} S-pairs")
        li, ci, ti = entries[i]
        lj, cj, tj = entries[j]
        lcm = _lcm(li, lj)
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        s_poly: Dict[Monomial, int] = {}
        for exp, v in ti.items():
            m = tuple(a + b for a, b in zip(exp, si))
            s_poly[m] = (s_poly.get(m, 0) + v) % p
        for exp, v in tj.items():
            m = tuple(a + b for a, b in zip(exp, sj))
            s_poly[m] = (s_poly.get(m, 0) - v) % p
        s_poly = {e: c for e, c in s_poly.items() if c}
        nf = _reduce(s_poly, entries, key, p)
        if nf:
            add(Polynomial._raw(ctx, nf), ps)
            if basis[-1].is_constant():
                return [ctx.one()]
    return _interreduce(basis, key)


# -- ideals -----------------------------------------------------------------


class Ideal:
    """Ideal given by generators, with a write-once cache of reduced bases."""

    def __init__(self, ctx: RingContext, generators: Iterable[Polynomial] = ()):
        gens: List[Polynomial] = []
        seen = set()
        for g in generators:
            if g.ctx != ctx:
                raise ContextMismatch(f"generator {g} is not in {ctx}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.ctx = ctx
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        # optional shortcut producing the reduced basis from other cached data
        self._derive: Optional[Callable[[MonomialOrder], Optional[List[Polynomial]]]] = None

    @classmethod
    def from_strings(cls, ctx: RingContext, texts: Iterable[str]) -> "Ideal":
        return cls(ctx, [ctx.parse(t) for t in texts])

    @classmethod
    def unit(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, [ctx.one()])

    @classmethod
    def zero(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, [])

    def groebner_basis(self, order: MonomialOrder = GREVLEX, limits: Optional[Limits] = None) -> Tuple[Polynomial, ...]:
        gb = self._gb.get(order)
        if gb is None:
            derived = self._derive(order) if self._derive is not None else None
            if derived is None:
                derived = buchberger(self.generators, order, limits)
            gb = self._gb.setdefault(order, tuple(derived))
        return gb

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if f.ctx != self.ctx:
            raise ContextMismatch(f"{f} is not in {self.ctx}")
        key = order.key
        entries = [_entry(g, key) for g in self.groebner_basis(order)]
        return Polynomial._raw(self.ctx, _reduce(f.terms, entries, key, self.ctx.p))

    def __contains__(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if not self.generators:
            return False
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        """True iff ``other`` is a subset of ``self``."""
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
        return all(g in self for g in other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.ctx.one() in self

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ctx != self.ctx:
            return False
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ctx, self.groebner_basis()))

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
        return Ideal(self.ctx, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
        return Ideal(self.ctx, [a * b for a in self.generators for b in other.generators])

    def scaled(self, h: Polynomial) -> "Ideal":
        """The ideal ``h * self``; its basis is derived from ``self``'s by scaling."""
        if h.is_zero():
            return Ideal.zero(self.ctx)
        out = Ideal(self.ctx, [h * g for g in self.generators])

        def derive(order):
            return _interreduce([h * g for g in self.groebner_basis(order)], order.key)

        out._derive = derive
        return out

    def bracket_power(self, e: int) -> "Ideal":
        return bracket_power(self, e)

    def degree_part_basis(self, d: int) -> List[Polynomial]:
        """Spanning set over F_p of the elements of degree <= d (grevlex basis times monomials)."""
        from .linalg import monomials_up_to

        out = []
        for g in self.groebner_basis(GREVLEX):
            room = d - g.degree()
            if room < 0:
                continue
            for m in monomials_up_to(self.ctx.n, room):
                out.append(g.mul_term(m, 1))
        return out

    def to_json(self) -> List[str]:
        return [str(g) for g in self.groebner_basis()]

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> Tuple[Polynomial, ...]:
    return I.groebner_basis(order)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """``J`` is a subset of ``I``."""
    return I.contains_ideal(J)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def bracket_power(I: Ideal, e: int) -> Ideal:
    """Ideal generated by the ``p^e``-th powers of the generators of ``I``.

    Frobenius maps a reduced Groebner basis to a reduced Groebner basis of
    the bracket power (leading terms and S-polynomials commute with it), so
    the new ideal's basis is derived rather than recomputed.
    """
    if e < 0:
        raise ValueError(f"level must be >= 0, got {e}")
    if e == 0:
        return I
    out = Ideal(I.ctx, [frobenius_power(g, e) for g in I.generators])

    def derive(order):
        return [frobenius_power(g, e) for g in I.groebner_basis(order)]

    out._derive = derive
    return out


def lift(f: Polynomial, generators: Sequence[Polynomial]) -> Optional[List[Polynomial]]:
    """Cofactors ``r`` with ``f == sum(r_i * g_i)``, or None when ``f`` is not in the ideal.

    Runs a plain Buchberger loop that tracks every basis element as a
    combination of the input generators.
    """
    ctx = f.ctx
    p = ctx.p
    key = GREVLEX.key
    m = len(generators)
    zero = ctx.zero()

    def unit_vec(i):
        v = [zero] * m
        v[i] = ctx.one()
        return v

    basis: List[Tuple[Polynomial, List[Polynomial]]] = []

    def reduce_tracked(h: Polynomial, rep: List[Polynomial]):
        # returns (remainder, rep of remainder) where remainder = h - sum q_k * basis_k
        rem = dict(h.terms)
        out: Dict[Monomial, int] = {}
        rep = list(rep)
        while rem:
            lead = max(rem, key=key)
            c = rem[lead]
            for g, grep in basis:
                g_lead, g_lc = g.leading(key)
                if divides_monomial(g_lead, lead):
                    shift = tuple(x - y for x, y in zip(lead, g_lead))
                    factor = c * pow(g_lc, -1, p) % p
                    for exp, v in g.terms.items():
                        mm = tuple(x + y for x, y in zip(exp, shift))
                        s = (rem.get(mm, 0) - factor * v) % p
                        if s:
                            rem[mm] = s
                        else:
                            rem.pop(mm, None)
                    rep = [r - q.mul_term(shift, factor) for r, q in zip(rep, grep)]
                    break
            else:
                out[lead] = c
                del rem[lead]
        return Polynomial._raw(ctx, out), rep

    for i, g in enumerate(generators):
        if g.is_zero():
            continue
        r, rep = reduce_tracked(g, unit_vec(i))
        if not r.is_zero():
            basis.append((r, rep))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        (gi, ri), (gj, rj) = basis[i], basis[j]
        li, ci = gi.leading(key)
        lj, cj = gj.leading(key)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = _lcm(li, lj)
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        ai, aj = pow(ci, -1, p), pow(cj, -1, p)
        s = gi.mul_term(si, ai) - gj.mul_term(sj, aj)
        srep = [x.mul_term(si, ai) - y.mul_term(sj, aj) for x, y in zip(ri, rj)]
        r, rep = reduce_tracked(s, srep)
        if not r.is_zero():
            basis.append((r, rep))
            k = len(basis) - 1
            pairs.extend((t, k) for t in range(k))
    # f - sum q_k g_k = remainder; negate the tracked representation.
    r, rep = reduce_tracked(f, [zero] * m)
    if not r.is_zero():
        return None
    return [-x for x in rep]
