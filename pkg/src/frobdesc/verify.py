"""Seeded property suites behind ``frobdesc verify``.

Each suite returns a :class:`SuiteResult`; failures keep enough input data
to rerun the failing instance by hand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .diffops import (
    DiffOp,
    DualElement,
    apply,
    compose,
    frobenius_images_within,
    frobenius_twist,
    is_de_stable,
    phi_map,
    psi_inverse,
    psi_map,
    random_diffop,
    ann_je,
    splitting_images_within,
    check_size,
)
from .frobenius import FrobeniusBasis, decompose, recompose, root_ideal
from .groebner import Ideal, bracket_power
from .localization import (
    FracSubmodule,
    LocalizedElement,
    apply_fraction,
    de_generated,
    de_generated_oracle,
    frobenius_action,
    pullback,
)
from .polynomials import RingContext, frobenius_power
from .randomgen import random_ideal, random_nonzero, random_polynomial, random_twist_scalar

VARIABLES = ("x", "y", "z")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def record(self, ok: bool, **reproducer) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(reproducer)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "total": self.total, "failures": self.failures}


def _ctx(p: int, n: int) -> RingContext:
    return RingContext(p, VARIABLES[:n])


def suite_decompose(p: int, n: int, e: int, count: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    res = SuiteResult("decompose")
    for _ in range(count):
        f = random_polynomial(ctx, rng, 8, terms=6)
        back = recompose(decompose(f, e))
        res.record(back == f, f=str(f), e=e, got=str(back))
    return res


def suite_roots(p: int, n: int, e: int, count: int, seed: int) -> SuiteResult:
    """root(I^[q]) = I, adjointness both ways, composition and the skew law."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    res = SuiteResult("roots")
    for _ in range(count):
        I = random_ideal(ctx, rng, 3, 3)
        J = random_ideal(ctx, rng, 3, 4)
        g = random_nonzero(ctx, rng, 2, 2)
        repro = {"I": [str(x) for x in I.generators], "J": [str(x) for x in J.generators], "g": str(g), "e": e}
        ok = root_ideal(bracket_power(I, e), e) == I
        rJ = root_ideal(J, e)
        ok &= bracket_power(I, e).contains_ideal(J) == I.contains_ideal(rJ)
        ok &= bracket_power(rJ, e).contains_ideal(J)
        ok &= root_ideal(J, e + 1) == root_ideal(root_ideal(J, 1), e) == root_ideal(root_ideal(J, e), 1)
        gq = frobenius_power(g, e)
        ok &= root_ideal(Ideal(ctx, [gq * h for h in J.generators]), e) == Ideal(ctx, [g * h for h in rJ.generators])
        res.record(bool(ok), **repro)
    return res


def suite_morita(p: int, n: int, e: int, count: int, seed: int, size_guard: Optional[int] = None) -> SuiteResult:
    """Phi realizes every matrix unit; Psi o psi_inverse = id; compose matches apply."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    basis = FrobeniusBasis(ctx, e)
    check_size(basis, size_guard)
    res = SuiteResult("morita")
    for a in range(basis.rank):
        pi_a = DualElement.projection(basis, a)
        for b in range(basis.rank):
            op = phi_map(ctx.monomial(basis.monomials[b]), pi_a)
            res.record(op == DiffOp.matrix_unit(basis, b, a), b=basis.label(b), a=basis.label(a), e=e)
    for _ in range(count):
        f = random_polynomial(ctx, rng, 6, 5)
        back = psi_map(*psi_inverse(f, e))
        res.record(back == f, f=str(f), e=e, got=str(back))
    for _ in range(count):
        d1 = random_diffop(basis, rng, 1, 0.4, size_guard)
        d2 = random_diffop(basis, rng, 1, 0.4, size_guard)
        u = random_polynomial(ctx, rng, 2 * basis.q, 4)
        lhs = apply(compose(d1, d2), u)
        rhs = apply(d1, apply(d2, u))
        res.record(lhs == rhs, d1=d1.to_json(), d2=d2.to_json(), u=str(u))
    return res


def suite_orbit(p: int, n: int, e: int, count: int, seed: int, size_guard: Optional[int] = None) -> SuiteResult:
    """D^(e) m computed through root ideals equals the orbit under all matrix units."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    check_size(FrobeniusBasis(ctx, e), size_guard)
    res = SuiteResult("orbit-oracle")
    for _ in range(count):
        f = random_nonzero(ctx, rng, 2, 2)
        g = random_nonzero(ctx, rng, 4, 3)
        k = rng.randint(0, 3)
        m = LocalizedElement(f, g, k)
        fast = de_generated(m, e)
        slow = de_generated_oracle(m, e, size_guard)
        res.record(fast == slow and fast.contains(m), f=str(f), g=str(g), k=k, e=e)
    return res


def suite_twist(p: int, n: int, e: int, count: int, seed: int, size_guard: Optional[int] = None) -> SuiteResult:
    """delta'(s r^p) = s delta(r)^p for admissible s, functoriality, and the fraction action."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    basis = FrobeniusBasis(ctx, e)
    check_size(FrobeniusBasis(ctx, e + 1), size_guard)
    res = SuiteResult("twist")
    ident = DiffOp.identity(ctx, e)
    res.record(frobenius_twist(ident) == DiffOp.identity(ctx, e + 1), case="identity", e=e)
    for _ in range(count):
        d = random_diffop(basis, rng, 2, 0.5, size_guard)
        d2 = random_diffop(basis, rng, 1, 0.5, size_guard)
        s = random_twist_scalar(ctx, rng, e)
        r = random_polynomial(ctx, rng, 2 * basis.q, 4)
        tw = frobenius_twist(d)
        ok = apply(tw, s * frobenius_power(r, 1)) == s * frobenius_power(apply(d, r), 1)
        ok &= frobenius_twist(compose(d, d2)) == compose(tw, frobenius_twist(d2))
        f = random_nonzero(ctx, rng, 2, 2)
        m = LocalizedElement(f, random_polynomial(ctx, rng, 3, 3), rng.randint(0, 3))
        ok &= apply_fraction(d, m) == apply_fraction(d, m, extra_lift=1)
        ok &= apply_fraction(tw, frobenius_action(m) * s) == frobenius_action(apply_fraction(d, m)) * s
        res.record(bool(ok), delta=d.to_json(), delta2=d2.to_json(), s=str(s), r=str(r), f=str(f), m=str(m))
    return res


def suite_te(p: int, n: int, e: int, count: int, seed: int, degree_bound: int = 6, size_guard: Optional[int] = None) -> SuiteResult:
    """The annihilator of J_e, Frobenius images of the root ideal and splitting images agree."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    res = SuiteResult("te")
    for _ in range(count):
        I = random_ideal(ctx, rng, 2, max(1, degree_bound // ctx.p**e), 2)
        K = bracket_power(I, e)
        ann = ann_je(K, e, degree_bound, size_guard)
        frob = frobenius_images_within(K, e, degree_bound)
        split = splitting_images_within(K, e, degree_bound)
        inside = all(x in K for x in split)
        ok = is_de_stable(K, e) and ann.basis == frob == split and inside
        res.record(bool(ok), K=[str(x) for x in K.generators], e=e, bound=degree_bound)
    return res


def suite_unit(p: int, n: int, e: int, count: int, seed: int) -> SuiteResult:
    """Pullback keeps strict inclusions strict (checked with an explicit element)."""
    rng = random.Random(seed)
    ctx = _ctx(p, n)
    res = SuiteResult("unit")
    done = 0
    attempts = 0
    while done < count and attempts < 20 * count + 20:
        attempts += 1
        f = random_nonzero(ctx, rng, 2, 2)
        A = FracSubmodule(f, random_ideal(ctx, rng, 2, 3, 2), rng.randint(0, 2))
        extra = FracSubmodule(f, Ideal(ctx, [random_nonzero(ctx, rng, 2, 2)]), rng.randint(0, 3))
        B = FracSubmodule.generated_by(A.generators() + extra.generators())
        w = B.element_outside(A)
        if w is None:
            continue
        done += 1
        PA, PB = pullback(A), pullback(B)
        ok = PB.contains_submodule(PA) and not PA.contains(frobenius_action(w))
        res.record(ok, f=str(f), A=A.to_json(), B=B.to_json())
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "decompose": suite_decompose,
    "roots": suite_roots,
    "morita": suite_morita,
    "orbit-oracle": suite_orbit,
    "twist": suite_twist,
    "te": suite_te,
    "unit": suite_unit,
}
