import random

from hypothesis import given, settings, strategies as st

from frobdesc import RingContext
from frobdesc.linalg import in_span, monomials_up_to, nullspace, rref, same_span, span_basis


def matmul_vec(rows, v, p):
    return [sum(a * b for a, b in zip(r, v)) % p for r in rows]


def test_monomials_up_to():
    ms = monomials_up_to(2, 2)
    assert len(ms) == 6 and ms[-1] == (0, 0)
    assert monomials_up_to(3, -1) == []


def test_rref_example():
    assert rref([[1, 1], [1, 1]], 2) == [[1, 1]]
    assert rref([[2, 4], [1, 1]], 5) == [[1, 0], [0, 1]]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(1, 6), st.integers(0, 10**6))
def test_nullspace_is_kernel(p, m, n, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(m)]
    ker = nullspace(rows, n, p)
    for v in ker:
        assert matmul_vec(rows, v, p) == [0] * m
    # rank-nullity
    assert len(ker) + len(rref(rows, p)) == n


def test_span_helpers():
    R = RingContext(3, ("x", "y"))
    a = [R.parse("x+y"), R.parse("x-y")]
    b = [R.parse("x"), R.parse("y")]
    assert same_span(R, a, b)
    assert in_span(R, R.parse("2*x+y"), a)
    assert not in_span(R, R.parse("x*y"), a)
    assert span_basis(R, [R.zero()]) == ()
