"""Sparse polynomials over the prime field F_p.

A polynomial is a mapping from exponent tuples to residues in ``1..p-1``.
Values are immutable; every operation returns a new :class:`Polynomial`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]

# Exponents are unbounded Python ints; the cap keeps results exportable to
# fixed-width systems and catches runaway Frobenius scaling early.
MAX_EXPONENT = 2**63 - 1


class ContextMismatch(ValueError):
    """Operands live in different polynomial rings."""


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a polynomial."""


class ParseError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingContext:
    """The ring F_p[x_1, ..., x_n] with named variables."""

    p: int
    variables: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not self.variables:
            raise ValueError("at least one variable is required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"variable names must be unique: {self.variables}")
        for name in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"invalid variable name {name!r}")

    @property
    def n(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: 1})

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: c})

    def gen(self, i: int) -> "Polynomial":
        exp = [0] * self.n
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.n:
            raise ValueError(f"exponent vector {exp} has wrong length for n={self.n}")
        return Polynomial(self, {exp: coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


def grevlex_key(exp: Monomial):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp: Monomial):
    return exp


class Polynomial:
    """Element of ``ctx``; ``terms`` maps exponent tuples to nonzero residues."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping[Monomial, int]):
        p = ctx.p
        clean: Dict[Monomial, int] = {}
        for exp, c in terms.items():
            c %= p
            if c:
                clean[exp] = c
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: RingContext, terms: Dict[Monomial, int]) -> "Polynomial":
        # terms already reduced and free of zeros
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self) -> int:
        return self.terms.get((0,) * self.ctx.n, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True))

    def leading(self, key=grevlex_key) -> Tuple[Monomial, int]:
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = (out.get(exp, 0) + c) % p
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Polynomial._raw(self.ctx, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ctx.zero()
        if len(a) < len(b):
            a, b = b, a
        p = self.ctx.p
        out: Dict[Monomial, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = (get(exp, 0) + ca * cb) % p
        return Polynomial._raw(self.ctx, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c %= self.ctx.p
        if not c:
            return self.ctx.zero()
        p = self.ctx.p
        return Polynomial._raw(self.ctx, {e: v * c % p for e, v in self.terms.items()})

    def mul_term(self, exp: Monomial, c: int) -> "Polynomial":
        p = self.ctx.p
        return Polynomial._raw(
            self.ctx,
            {tuple(x + y for x, y in zip(e, exp)): v * c % p for e, v in self.terms.items()},
        )

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {n!r}")
        # f^n = prod_i F^i(f^{d_i}) over the base-p digits d_i of n; keeps
        # intermediate results as sparse as the answer allows.
        p = self.ctx.p
        result = self.ctx.one()
        i = 0
        while n:
            n, d = divmod(n, p)
            if d:
                result = result * frobenius_power(_small_power(self, d), i)
            i += 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, p={self.ctx.p})"


def _small_power(f: Polynomial, d: int) -> Polynomial:
    result = f.ctx.one()
    for _ in range(d):
        result = result * f
    return result


def ring_arithmetic(op: str, a: Polynomial, b) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul``, ``scale`` or ``pow`` by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def frobenius_power(f: Polynomial, e: int) -> Polynomial:
    """Return ``f^(p^e)``.

    Prime-field coefficients are fixed by Frobenius, so this only scales
    exponent vectors by ``p^e``.
    """
    if e < 0:
        raise ValueError(f"level must be >= 0, got {e}")
    if e == 0 or not f.terms:
        return f
    q = f.ctx.p**e
    out = {}
    for exp, c in f.terms.items():
        scaled = tuple(x * q for x in exp)
        if scaled and max(scaled) > MAX_EXPONENT:
            raise OverflowError(f"exponent overflow computing Frobenius power p^{e}")
        out[scaled] = c
    return Polynomial._raw(f.ctx, out)


def divides_monomial(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Return ``q`` with ``q * f == g``; raise :class:`NotDivisible` otherwise."""
    g._check(f)
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p = g.ctx.p
    lead_f, lc_f = f.leading()
    inv = pow(lc_f, -1, p)
    rest = {e: c for e, c in f.terms.items() if e != lead_f}
    rem = dict(g.terms)
    quot: Dict[Monomial, int] = {}
    while rem:
        lead = max(rem, key=grevlex_key)
        if not divides_monomial(lead_f, lead):
            raise NotDivisible(f"{format_polynomial(f)} does not divide {format_polynomial(g)}")
        shift = tuple(x - y for x, y in zip(lead, lead_f))
        c = rem.pop(lead) * inv % p
        quot[shift] = c
        for exp, v in rest.items():
            m = tuple(x + y for x, y in zip(exp, shift))
            s = (rem.get(m, 0) - c * v) % p
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
    return Polynomial._raw(g.ctx, quot)


def divides(f: Polynomial, g: Polynomial) -> bool:
    try:
        exact_divide(g, f)
    except NotDivisible:
        return False
    return True


# -- text format ------------------------------------------------------------


def format_monomial(ctx: RingContext, exp: Monomial) -> str:
    parts = []
    for name, k in zip(ctx.variables, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for exp, c in f:
        mono = format_monomial(f.ctx, exp)
        if mono == "1":
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[\^*+\-()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := factor ('*' factor)*
    # factor := atom ('^' num)?
    # atom := num | var | '(' expr ')'

    def __init__(self, ctx: RingContext, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial string")
        result = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"expected integer exponent in {self.text!r}")
            base = base**val
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ctx.constant(val)
        if kind == "var":
            try:
                return self.ctx.gen(self.ctx.variables.index(val))
            except ValueError:
                raise ParseError(f"unknown variable {val!r}; ring has {self.ctx.variables}") from None
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(ctx: RingContext, text: str) -> Polynomial:
    return _Parser(ctx, text).parse()


def parse_monomial(ctx: RingContext, text: str) -> Monomial:
    f = parse_polynomial(ctx, text)
    if len(f.terms) != 1 or next(iter(f.terms.values())) != 1:
        raise ParseError(f"{text!r} is not a monomial")
    return next(iter(f.terms))


def polynomials(ctx: RingContext, texts: Iterable[str]) -> list[Polynomial]:
    return [parse_polynomial(ctx, t) for t in texts]
