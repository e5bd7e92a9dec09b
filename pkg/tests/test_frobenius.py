import pytest
from hypothesis import given, settings, strategies as st

from frobdesc import (
    FrobeniusBasis,
    FrobeniusDecomposition,
    Ideal,
    Polynomial,
    RingContext,
    bracket_power,
    cartier_project,
    decompose,
    frobenius_power,
    frobenius_root_chain,
    recompose,
    root_ideal,
    root_ideal_of_multiple,
    splitting_compose,
)
from frobdesc.frobenius import bracket_power_of_root, in_bracket_power

from strategies import contexts, ideals, nonzero_polys, polys

R1 = RingContext(2, ("x",))
R2 = RingContext(2, ("x", "y"))


def test_decompose_example():
    d = decompose(R1.parse("x^3+x^2+1"), 1)
    assert d.to_json() == {"e": 1, "coeffs": {"1": "x+1", "x": "x"}}
    assert FrobeniusDecomposition.from_json(R1, d.to_json()) == d


def test_basis_shape():
    b = FrobeniusBasis(RingContext(3, ("x", "y")), 1)
    assert b.rank == 9 and b.monomials[0] == (0, 0)
    assert b.label(b.slot("x*y^2")) == "x*y^2"
    with pytest.raises(ValueError):
        b.slot((3, 0))
    assert FrobeniusBasis(R1, 0).rank == 1


def test_cartier_and_splitting():
    f = R2.parse("x^3*y^2+x*y+y^4")
    assert cartier_project(f, "x", 1) == R2.parse("x*y")
    assert cartier_project(f, "x*y", 1) == R2.one()
    assert splitting_compose(f, 1) == R2.parse("y^4")


def test_root_ideal_examples():
    # cusp: f^{p-1} = y^2+x^3 splits into y + x*x^2 -> (x, y)
    assert root_ideal(Ideal.from_strings(R2, ["y^2+x^3"]), 1) == Ideal.from_strings(R2, ["x", "y"])
    assert root_ideal(Ideal.from_strings(R1, ["x^9"]), 2) == Ideal.from_strings(R1, ["x^2"])
    assert root_ideal(Ideal.from_strings(R1, ["x"]), 1).is_unit()
    assert root_ideal(Ideal.zero(R1), 1).is_zero()


def test_chain_non_monotone():
    J = frobenius_root_chain(R1.parse("x^3"), 2)
    assert J[0] == Ideal.from_strings(R1, ["x"])
    assert J[1] == Ideal.from_strings(R1, ["x^2"])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_decompose_roundtrip_and_uniqueness(data):
    ctx = data.draw(contexts(max_n=3))
    e = data.draw(st.integers(1, 2))
    basis = FrobeniusBasis(ctx, e)
    f = data.draw(polys(ctx, 8, 8))
    assert recompose(decompose(f, e)) == f
    # choose coefficients first, then recover them
    coeffs = tuple(data.draw(polys(ctx, 2, 2)) if i < 4 else ctx.zero() for i in range(basis.rank))
    g = FrobeniusDecomposition(basis, coeffs)
    assert decompose(recompose(g), e) == g


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_root_of_monomial_is_floor(data):
    ctx = data.draw(contexts(max_n=3))
    e = data.draw(st.integers(1, 2))
    q = ctx.p**e
    a = data.draw(st.tuples(*[st.integers(0, 20)] * ctx.n))
    expect = ctx.monomial(tuple(x // q for x in a))
    assert root_ideal(Ideal(ctx, [ctx.monomial(a)]), e) == Ideal(ctx, [expect])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_root_ideal_is_least(data):
    ctx = data.draw(contexts(primes=(2, 3), max_n=2))
    e = data.draw(st.integers(1, 2))
    J = data.draw(ideals(ctx, 3, 5, 3))
    I = data.draw(ideals(ctx, 2, 2, 2))
    root = root_ideal(J, e)
    assert bracket_power(root, e).contains_ideal(J)
    assert bracket_power(I, e).contains_ideal(J) == I.contains_ideal(root)
    assert bracket_power_of_root(J, e) == bracket_power(root, e)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_membership_via_cartier_coefficients(data):
    ctx = data.draw(contexts(primes=(2, 3), max_n=2))
    e = data.draw(st.integers(1, 2))
    I = data.draw(ideals(ctx, 2, 2, 2))
    g = data.draw(polys(ctx, 6, 6))
    K = bracket_power(I, e)
    assert in_bracket_power(g, I, e) == (g in Ideal(ctx, [frobenius_power(h, e) for h in I.generators]))
    h = data.draw(polys(ctx, 3, 3))
    member = h * K.generators[0]
    assert in_bracket_power(member, I, e)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_root_of_multiple_matches_direct(data):
    ctx = data.draw(contexts(primes=(2, 3), max_n=2))
    e = data.draw(st.integers(1, 2))
    H = data.draw(ideals(ctx, 2, 2, 2))
    f = data.draw(nonzero_polys(ctx, 2, 2))
    k = data.draw(st.integers(0, 12))
    direct = root_ideal(Ideal(ctx, [f**k * g for g in H.generators]), e)
    assert root_ideal_of_multiple(H, f, k, e) == direct


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_chain_matches_direct_roots(data):
    ctx = data.draw(contexts(primes=(2, 3), max_n=2))
    f = data.draw(nonzero_polys(ctx, 3, 3))
    chain = frobenius_root_chain(f, 2)
    for e, J in enumerate(chain, start=1):
        assert J == root_ideal(Ideal(ctx, [f ** (ctx.p**e - 1)]), e)
