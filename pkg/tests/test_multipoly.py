from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from symanzik_kit.multipoly import (
    MPoly, add, evaluate, mul, parse_polynomial, reciprocal_transform, scalar_mul,
    substitute_sum, to_canonical_string,
)

x1, x2, x3 = MPoly.variables(3)


def polys(nvars=3, max_terms=5, max_exp=2):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * nvars),
                     st.fractions(min_value=-5, max_value=5, max_denominator=4))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: MPoly(nvars, {e: c for e, c in ts}))


def as_sympy(p):
    xs = sympy.symbols(f"x1:{p.nvars + 1}")
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(xs, e):
            t *= v ** k
        out += t
    return sympy.expand(out)


def test_ring_examples():
    a, b = MPoly.variables(2)
    assert mul(a + b, a - b) == a ** 2 - b ** 2
    p = x1 * x2 + x1 * x3 + x2 * x3
    assert add(p, scalar_mul(p, -1)) == MPoly.zero(3)
    assert p * 1 == p
    with pytest.raises(ValueError):
        a + x1


def test_no_zero_terms_stored():
    p = MPoly(2, {(1, 0): 0, (0, 1): 3})
    assert p.terms == {(0, 1): Fraction(3)}
    assert len(x1 - x1) == 0


def test_evaluate_examples():
    p = x1 * x2 + x1 * x3 + x2 * x3
    assert evaluate(p, (1, 1, 1)) == 3
    q = p + 7
    assert q.evaluate((0, 0, 0)) == 7
    a, b = MPoly.variables(2)
    assert (4 * a * b).evaluate((1, 1)) == 4
    with pytest.raises(ValueError):
        p.evaluate((1, 1))


def test_substitute_sum_examples():
    y = MPoly.variables(3)
    assert substitute_sum(MPoly.variable(0, 1), [[0, 1]], 2) == MPoly.variable(0, 2) + MPoly.variable(1, 2)
    a, b = MPoly.variables(2)
    out = (a * b).substitute_sum([[0, 1], [2]], 3)
    assert out == y[0] * y[2] + y[1] * y[2]
    with pytest.raises(ValueError):
        (a * b).substitute_sum([[0], []], 3)


def test_reciprocal_examples():
    p = x1 * x2 + x1 * x3 + x2 * x3
    assert reciprocal_transform(p, 3) == x1 + x2 + x3
    assert MPoly.constant(1, 2).reciprocal_transform() == MPoly.variable(0, 2) * MPoly.variable(1, 2)
    assert p.reciprocal_transform().reciprocal_transform() == p
    with pytest.raises(ValueError):
        (x1 ** 2).reciprocal_transform()


def test_canonical_string_examples():
    a, b = MPoly.variables(2)
    assert to_canonical_string(4 * a * b) == "4*x1*x2"
    assert to_canonical_string(MPoly.zero(2)) == "0"
    assert to_canonical_string(b + a) == "x1 + x2"
    assert (Fraction(3, 4) * a ** 2 - b).to_canonical_string() == "3/4*x1^2 - x2"


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(polys(), polys())
def test_product_matches_sympy(p, q):
    assert as_sympy(p * q) == sympy.expand(as_sympy(p) * as_sympy(q))


@given(polys())
def test_string_round_trip(p):
    assert parse_polynomial(to_canonical_string(p), 3) == p
    assert MPoly.from_term_list(p.to_term_list(), 3) == p


@given(st.lists(st.sets(st.integers(0, 3), min_size=2, max_size=2), min_size=1, max_size=6),
       st.integers(1, 5))
def test_reciprocal_involution(supports, c):
    p = MPoly.zero(4)
    for s in supports:
        p = p + MPoly.squarefree(sorted(s), 4, c)
    assert p.reciprocal_transform().reciprocal_transform() == p


@given(polys(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3),
                         min_size=3, max_size=3))
def test_evaluate_matches_sympy(p, pt):
    xs = sympy.symbols("x1:4")
    expected = as_sympy(p).subs(dict(zip(xs, [sympy.Rational(v.numerator, v.denominator) for v in pt])))
    assert p.evaluate(pt) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))
