"""The unit R[F]-module R_f and its finitely generated R-submodules.

Elements are fractions g / f^k; submodules are ``I * f^{-t}`` for an ideal I.
Since R is a domain, R -> R_f is injective and every comparison reduces to
ideal membership after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .diffops import DiffOp, apply, de_orbit_exhaustive
from .frobenius import frobenius_root_chain, in_bracket_power, root_ideal_of_multiple
from .groebner import Ideal, ResourceLimitError, bracket_power, lift
from .polynomials import ContextMismatch, NotDivisible, Polynomial, exact_divide, frobenius_power

DEFAULT_E_MAX = 6
DEFAULT_N_MAX = 12


class HypothesisError(ValueError):
    """The submodule is not contained in its Frobenius pullback."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class LocalizedElement:
    """g / f^k in R_f, stored with k minimal."""

    f: Polynomial
    g: Polynomial
    k: int = 0

    def __post_init__(self):
        if self.f.is_zero():
            raise ZeroDivisionError("cannot localize at 0")
        if self.f.ctx != self.g.ctx:
            raise ContextMismatch(f"{self.f.ctx} vs {self.g.ctx}")
        if self.k < 0:
            raise ValueError(f"denominator exponent must be >= 0, got {self.k}")
        g, k = self.g, self.k
        if g.is_zero():
            k = 0
        elif self.f.is_constant():
            inv = pow(self.f.constant_coefficient(), -k, self.f.ctx.p)
            g, k = g.scale(inv), 0
        else:
            while k > 0:
                try:
                    g = exact_divide(g, self.f)
                except NotDivisible:
                    break
                k -= 1
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "k", k)

    @classmethod
    def inverse_power(cls, f: Polynomial, n: int) -> "LocalizedElement":
        return cls(f, f.ctx.one(), n)

    def lift(self, t: int) -> Polynomial:
        """Numerator over the denominator f^t (requires t >= k)."""
        if t < self.k:
            raise ValueError(f"cannot write {self} over f^{t}")
        return self.g * self.f ** (t - self.k)

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        self._check(other)
        t = max(self.k, other.k)
        return LocalizedElement(self.f, self.lift(t) + other.lift(t), t)

    def __neg__(self):
        return LocalizedElement(self.f, -self.g, self.k)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return LocalizedElement(self.f, self.g * other, self.k)
        if isinstance(other, int):
            return LocalizedElement(self.f, self.g.scale(other), self.k)
        if isinstance(other, LocalizedElement):
            self._check(other)
            return LocalizedElement(self.f, self.g * other.g, self.k + other.k)
        return NotImplemented

    __rmul__ = __mul__

    def _check(self, other: "LocalizedElement") -> None:
        if other.f != self.f:
            raise ContextMismatch(f"elements of different localizations: R_({self.f}) vs R_({other.f})")

    def is_zero(self) -> bool:
        return self.g.is_zero()

    def __str__(self):
        if self.k == 0:
            return str(self.g)
        return f"({self.g})/({self.f})^{self.k}"


# -- the unit structure --------------------------------------------------------


def frobenius_action(m: LocalizedElement) -> LocalizedElement:
    """F(g / f^k) = g^p / f^{kp}."""
    return LocalizedElement(m.f, frobenius_power(m.g, 1), m.k * m.f.ctx.p)


def theta(u: Polynomial, v: LocalizedElement) -> LocalizedElement:
    """The structure map F^*R_f -> R_f on a pure tensor: u (x) v -> u * v^p."""
    return frobenius_action(v) * u


def theta_inverse(m: LocalizedElement) -> Tuple[Polynomial, LocalizedElement]:
    """a / f^k -> (a * f^{k(p-1)}) (x) (1 / f^k)."""
    p = m.f.ctx.p
    return m.g * m.f ** (m.k * (p - 1)), LocalizedElement.inverse_power(m.f, m.k)


@dataclass(frozen=True)
class UnitStructure:
    """R_f with theta, its inverse and the Frobenius action."""

    f: Polynomial

    def element(self, g: Polynomial, k: int = 0) -> LocalizedElement:
        return LocalizedElement(self.f, g, k)

    def frobenius(self, m: LocalizedElement) -> LocalizedElement:
        return frobenius_action(m)

    def theta(self, u: Polynomial, v: LocalizedElement) -> LocalizedElement:
        return theta(u, v)

    def theta_inverse(self, m: LocalizedElement) -> Tuple[Polynomial, LocalizedElement]:
        return theta_inverse(m)

    def roundtrip_ok(self, m: LocalizedElement) -> bool:
        return theta(*theta_inverse(m)) == m

    def relation_ok(self, r: Polynomial, m: LocalizedElement) -> bool:
        """F(r m) == r^p F(m)."""
        return frobenius_action(m * r) == frobenius_action(m) * frobenius_power(r, 1)


# -- submodules I * f^{-t} -------------------------------------------------------


@dataclass(frozen=True)
class FracSubmodule:
    f: Polynomial
    ideal: Ideal
    t: int = 0

    def __post_init__(self):
        if self.f.is_zero():
            raise ZeroDivisionError("cannot localize at 0")
        if self.ideal.ctx != self.f.ctx:
            raise ContextMismatch(f"{self.ideal.ctx} vs {self.f.ctx}")

    @classmethod
    def generated_by(cls, elements: Sequence[LocalizedElement]) -> "FracSubmodule":
        if not elements:
            raise ValueError("need at least one generator")
        f = elements[0].f
        for m in elements:
            m._check(elements[0])
        t = max(m.k for m in elements)
        return cls(f, Ideal(f.ctx, [m.lift(t) for m in elements]), t)

    def generators(self) -> List[LocalizedElement]:
        return [LocalizedElement(self.f, g, self.t) for g in self.ideal.generators]

    def contains(self, m: LocalizedElement) -> bool:
        if m.f != self.f:
            raise ContextMismatch("element and submodule live in different localizations")
        if m.is_zero():
            return True
        if self.t >= m.k:
            return m.g * self.f ** (self.t - m.k) in self.ideal
        return m.g in self.ideal.scaled(self.f ** (m.k - self.t))

    __contains__ = contains

    def contains_submodule(self, other: "FracSubmodule") -> bool:
        """``other`` is a subset of ``self``."""
        if other.f != self.f:
            raise ContextMismatch("submodules of different localizations")
        lhs_shift = max(0, self.t - other.t)
        rhs_shift = max(0, other.t - self.t)
        target = self.ideal.scaled(self.f**rhs_shift) if rhs_shift else self.ideal
        mult = self.f**lhs_shift
        return all(g * mult in target for g in other.ideal.generators)

    def __le__(self, other: "FracSubmodule") -> bool:
        return other.contains_submodule(self)

    def __eq__(self, other):
        if not isinstance(other, FracSubmodule):
            return NotImplemented
        return self.f == other.f and self.contains_submodule(other) and other.contains_submodule(self)

    __hash__ = None

    def element_outside(self, other: "FracSubmodule") -> Optional[LocalizedElement]:
        """A generator of ``self`` that does not lie in ``other``, if any."""
        for m in self.generators():
            if not other.contains(m):
                return m
        return None

    def to_json(self) -> dict:
        return {"f": str(self.f), "ideal": self.ideal.to_json(), "t": self.t}

    def __str__(self):
        return f"{self.ideal} * ({self.f})^-{self.t}"


def pullback(M: FracSubmodule, e: int = 1) -> FracSubmodule:
    """F^{e*} M inside R_f: spanned by r * m^{p^e}, i.e. I^{[p^e]} * f^{-t p^e}."""
    return FracSubmodule(M.f, bracket_power(M.ideal, e), M.t * M.f.ctx.p**e)


def _lifted_numerator(m: LocalizedElement, e: int, extra_lift: int = 0) -> Tuple[int, int]:
    q = m.f.ctx.p**e
    mult = _ceil_div(m.k, q) + extra_lift
    return mult, q * mult - m.k


def de_generated(m: LocalizedElement, e: int, extra_lift: int = 0) -> FracSubmodule:
    """D^(e) * m.

    Writing m = u / f^{q m'} with q = p^e puts a q-th power in the
    denominator, so operators act on the numerator alone and the orbit is
    (D^(e) u) / f^{q m'} = root_ideal((u), e)^{[q]} / f^{q m'}.
    """
    if e < 1:
        raise ValueError(f"level must be >= 1, got {e}")
    mult, shift = _lifted_numerator(m, e, extra_lift)
    root = root_ideal_of_multiple(Ideal(m.f.ctx, [m.g]), m.f, shift, e)
    return FracSubmodule(m.f, bracket_power(Ideal(m.f.ctx, root.groebner_basis()), e), m.f.ctx.p**e * mult)


def de_generated_oracle(m: LocalizedElement, e: int, size_guard=None) -> FracSubmodule:
    """D^(e) * m from the matrix units applied to the explicitly lifted numerator."""
    mult, shift = _lifted_numerator(m, e)
    u = m.g * m.f**shift
    return FracSubmodule(m.f, de_orbit_exhaustive(u, e, size_guard), m.f.ctx.p**e * mult)


def apply_fraction(delta: DiffOp, m: LocalizedElement, extra_lift: int = 0) -> LocalizedElement:
    """delta(u / f^{q m'}) = delta(u) / f^{q m'}; independent of the lift."""
    if delta.ctx != m.f.ctx:
        raise ContextMismatch(f"{delta.ctx} vs {m.f.ctx}")
    mult, shift = _lifted_numerator(m, delta.e, extra_lift) if delta.e > 0 else (m.k, 0)
    u = m.g * m.f**shift
    q = m.f.ctx.p**delta.e
    return LocalizedElement(m.f, apply(delta, u), q * mult)


# -- generation witnesses and the chain of D^(e) f^{-1} -------------------------


@dataclass
class Witness:
    """Least level e with f^{-N} in D^(e) * f^{-1}, or an exhausted search."""

    f: Polynomial
    N: int
    level: Optional[int]
    attempts: List[Tuple[int, bool]] = field(default_factory=list)
    reverified: bool = False

    @property
    def exhausted(self) -> bool:
        return self.level is None


def _chain_module(f: Polynomial, J: Ideal, e: int) -> FracSubmodule:
    return FracSubmodule(f, bracket_power(J, e), f.ctx.p**e)


def generation_witness(f: Polynomial, N: int, e_max: int = DEFAULT_E_MAX, chain: Optional[List[Ideal]] = None) -> Witness:
    """Search e = 1..e_max for f^{-N} in (J_e^{[p^e]}, p^e), J_e = root_ideal((f^{p^e-1}), e).

    A hit is re-verified by reducing modulo a freshly computed Groebner
    basis of the bracket power.
    """
    if f.is_zero():
        raise ZeroDivisionError("cannot localize at 0")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    chain = chain if chain is not None and len(chain) >= e_max else frobenius_root_chain(f, e_max)
    target = LocalizedElement.inverse_power(f, N)
    witness = Witness(f, N, None)
    p = f.ctx.p
    for e in range(1, e_max + 1):
        J = chain[e - 1]
        q = p**e
        if q >= target.k:
            h = target.g * f ** (q - target.k)
            member = in_bracket_power(h, J, e)
        else:
            member = _chain_module(f, J, e).contains(target)
        witness.attempts.append((e, member))
        if member:
            witness.level = e
            fresh = Ideal(f.ctx, [frobenius_power(g, e) for g in J.generators])
            if q >= target.k:
                direct = (target.g * f ** (q - target.k)) in fresh
            else:
                direct = FracSubmodule(f, fresh, q).contains(target)
            if not direct:
                raise AssertionError(f"witness for f={f}, N={N}, e={e} failed direct re-verification")
            witness.reverified = True
            break
    return witness


@dataclass
class LevelRecord:
    e: int
    root_ideal: Ideal
    module: FracSubmodule
    contains_next: Optional[bool] = None
    equals_next: Optional[bool] = None
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "e": self.e,
            "rootIdeal": self.root_ideal.to_json(),
            "containsNext": self.contains_next,
            "equalsNext": self.equals_next,
        }
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class ChainReport:
    f: Polynomial
    levels: List[LevelRecord]
    level_summary: Optional[int]
    witnesses: Dict[int, Optional[int]]

    @property
    def exhausted(self) -> bool:
        return any(v is None for v in self.witnesses.values())

    @property
    def monotone(self) -> bool:
        return all(r.contains_next is not False for r in self.levels)

    def to_json(self) -> dict:
        return {
            "f": str(self.f),
            "p": self.f.ctx.p,
            "levels": [r.to_json() for r in self.levels],
            "levelSummary": self.level_summary,
            "witnesses": {str(n): e for n, e in sorted(self.witnesses.items())},
            "exhausted": self.exhausted,
        }


def chain_report(f: Polynomial, e_max: int = DEFAULT_E_MAX, n_max: int = DEFAULT_N_MAX) -> ChainReport:
    """Root ideals J_e and modules M_e = D^(e) f^{-1} for e = 1..e_max, with witnesses N -> e(N).

    The level summary is the first e with J_e == J_{e+1}; it is an observation
    about ideals and says nothing about later levels.
    """
    if f.is_zero():
        raise ZeroDivisionError("cannot localize at 0")
    chain = frobenius_root_chain(f, e_max + 1)
    levels = [LevelRecord(e, chain[e - 1], _chain_module(f, chain[e - 1], e)) for e in range(1, e_max + 2)]
    summary = None
    for cur, nxt in zip(levels, levels[1:]):
        try:
            cur.contains_next = nxt.module.contains_submodule(cur.module)
            cur.equals_next = cur.contains_next and cur.module.contains_submodule(nxt.module)
            if summary is None and cur.root_ideal == nxt.root_ideal:
                summary = cur.e
        except ResourceLimitError as exc:
            cur.error = str(exc)
    witnesses = {}
    for N in range(1, n_max + 1):
        witnesses[N] = generation_witness(f, N, e_max, chain).level
    return ChainReport(f, levels[:e_max], summary, witnesses)


# -- unit submodules and roots -----------------------------------------------------


@dataclass
class UnitCertificate:
    kind: str  # "UNIT" or "STRICT"
    chain: List[FracSubmodule]
    witnesses: List[LocalizedElement]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [m.to_json() for m in self.chain],
            "strictWitnesses": [str(w) for w in self.witnesses],
        }


def is_unit_submodule(M: FracSubmodule, depth: int = 4) -> UnitCertificate:
    """Decide whether M = F^*M for a submodule with M contained in F^*M.

    Otherwise the inclusion is strict and pulling back keeps it strict; the
    certificate carries ``depth`` verified links of that ascending chain, each
    with an element of the larger module missing from the smaller one.
    """
    up = pullback(M)
    if not up.contains_submodule(M):
        raise HypothesisError(f"{M} is not contained in its pullback {up}")
    if M.contains_submodule(up):
        return UnitCertificate("UNIT", [M, up], [])
    chain = [M, up]
    witnesses = []
    for i in range(depth):
        lower, upper = chain[i], chain[i + 1]
        if not upper.contains_submodule(lower):
            raise AssertionError(f"pullback chain failed to ascend at link {i}")
        w = upper.element_outside(lower)
        if w is None:
            raise AssertionError(f"pullback chain link {i} is not strict")
        witnesses.append(w)
        if i + 2 <= depth:
            chain.append(pullback(upper))
    return UnitCertificate("STRICT", chain[: depth + 1], witnesses)


@dataclass
class RootCertificate:
    submodule: FracSubmodule
    contained_in_pullback: bool
    cofinal: Dict[int, Optional[int]]
    expressions: List[Optional[List[Polynomial]]]

    @property
    def cofinality_ok(self) -> bool:
        return all(v is not None for v in self.cofinal.values())

    @property
    def expressions_ok(self) -> bool:
        return all(x is not None for x in self.expressions)

    @property
    def passed(self) -> bool:
        return self.contained_in_pullback and self.cofinality_ok and self.expressions_ok

    def to_json(self) -> dict:
        return {
            "root": self.submodule.to_json(),
            "clauses": {
                "containedInPullback": self.contained_in_pullback,
                "cofinal": self.cofinality_ok,
                "generatorsFromFrobenius": self.expressions_ok,
            },
            "cofinalLevels": {str(n): e for n, e in sorted(self.cofinal.items())},
            "expressions": [None if x is None else [str(r) for r in x] for x in self.expressions],
            "passed": self.passed,
        }


def root_check(generators: Sequence[LocalizedElement], e_max: int = DEFAULT_E_MAX, n_max: int = DEFAULT_N_MAX) -> RootCertificate:
    """Check that the generators span a root N_0 of R_f.

    (a) N_0 is contained in F^*N_0; (b) every f^{-N}, N <= n_max, lies in some
    F^{e*}N_0 with e <= e_max; (c) each generator n_i is written as
    sum_j r_j F(n_j), with the cofactors r_j found by an ideal lift.
    """
    if not generators:
        raise ValueError("need at least one generator")
    N0 = FracSubmodule.generated_by(generators)
    f = N0.f
    p = f.ctx.p
    contained = pullback(N0).contains_submodule(N0)

    cofinal: Dict[int, Optional[int]] = {}
    for N in range(1, n_max + 1):
        target = LocalizedElement.inverse_power(f, N)
        cofinal[N] = next((e for e in range(1, e_max + 1) if pullback(N0, e).contains(target)), None)

    frob = [frobenius_action(n) for n in generators]
    s = max(m.k for m in frob)
    lifted = [m.lift(s) for m in frob]
    expressions: List[Optional[List[Polynomial]]] = []
    for n in generators:
        if n.k > s:
            expressions.append(None)
            continue
        coeffs = lift(n.lift(s), lifted)
        if coeffs is not None:
            total = LocalizedElement(f, f.ctx.zero())
            for r, m in zip(coeffs, frob):
                total = total + m * r
            if total != n:
                raise AssertionError(f"lifted expression for {n} does not recombine")
        expressions.append(coeffs)
    return RootCertificate(N0, contained, cofinal, expressions)
