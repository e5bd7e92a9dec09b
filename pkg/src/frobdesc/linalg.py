"""Dense row reduction over F_p, used for degree-truncated subspace computations."""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Tuple

from .polynomials import Monomial, Polynomial, RingContext, grevlex_key


def monomials_up_to(n: int, d: int) -> List[Monomial]:
    """All exponent vectors of length n and total degree <= d, in grevlex-descending order."""
    if d < 0:
        return []
    out = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]
    out.sort(key=grevlex_key, reverse=True)
    return out


def rref(rows: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """Reduced row echelon form mod p with zero rows dropped."""
    mat = [[x % p for x in r] for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = pow(mat[pivot_row][col], -1, p)
        prow = [x * inv % p for x in mat[pivot_row]]
        mat[pivot_row] = prow
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(x - c * y) % p for x, y in zip(mat[r], prow)]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [r for r in mat[:pivot_row] if any(r)]


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> List[List[int]]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red = rref(rows, p) if rows else []
    pivots = []
    for r in red:
        pivots.append(next(i for i, x in enumerate(r) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[fc]) % p
        basis.append(v)
    return basis


class MonomialIndex:
    """Coordinates of polynomials with respect to a growing list of monomials."""

    def __init__(self, monomials: Sequence[Monomial] = ()):
        self.monomials: List[Monomial] = []
        self.position: Dict[Monomial, int] = {}
        for m in monomials:
            self.add(m)

    def add(self, m: Monomial) -> int:
        if m not in self.position:
            self.position[m] = len(self.monomials)
            self.monomials.append(m)
        return self.position[m]

    def register(self, polys: Sequence[Polynomial]) -> None:
        for f in polys:
            for m in sorted(f.terms, key=grevlex_key, reverse=True):
                self.add(m)

    def vector(self, f: Polynomial) -> List[int]:
        v = [0] * len(self.monomials)
        for m, c in f.terms.items():
            v[self.position[m]] = c
        return v

    def polynomial(self, ctx: RingContext, v: Sequence[int]) -> Polynomial:
        return Polynomial(ctx, {m: c for m, c in zip(self.monomials, v) if c})


def span_basis(ctx: RingContext, polys: Sequence[Polynomial]) -> Tuple[Polynomial, ...]:
    """Canonical F_p-basis (reduced echelon form over grevlex-descending monomials) of the span."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        return ()
    monos = sorted({m for f in polys for m in f.terms}, key=grevlex_key, reverse=True)
    index = MonomialIndex(monos)
    red = rref([index.vector(f) for f in polys], ctx.p)
    return tuple(index.polynomial(ctx, r) for r in red)


def same_span(ctx: RingContext, a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    return span_basis(ctx, a) == span_basis(ctx, b)


def in_span(ctx: RingContext, f: Polynomial, polys: Sequence[Polynomial]) -> bool:
    return len(span_basis(ctx, list(polys) + [f])) == len(span_basis(ctx, polys))
