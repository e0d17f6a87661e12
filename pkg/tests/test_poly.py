import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aggraded.orders import DS, GREVLEX
from aggraded.poly import (FreeLayout, Monomial, PolyRing, Vector,
                           order_and_initial_form)

R = PolyRing(["X", "Y", "Z"], 32003)


def rand_poly(draw_terms):
    terms = {}
    for exps, c in draw_terms:
        terms[exps] = terms.get(exps, 0) + c
    return R.poly(terms)


poly_strategy = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-10, 10)),
    max_size=6,
).map(rand_poly)


def test_parser_roundtrip():
    f = R.from_string("X*Z - Y^3")
    assert f == R.gen(0) * R.gen(2) - R.gen(1) ** 3
    assert R.from_string("2*X^2*Y + 1") == 2 * R.gen(0) ** 2 * R.gen(1) + R.one()
    assert R.from_string("0").is_zero()
    assert R.from_string("-X + X").is_zero()
    with pytest.raises(ValueError):
        R.from_string("X + W")


def test_monomial_cached_degree():
    m = Monomial.of((2, 0, 3))
    assert m.total_degree == 5
    with pytest.raises(ValueError):
        Monomial.of((-1, 0, 0))


@settings(max_examples=60)
@given(poly_strategy, poly_strategy, poly_strategy)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == R.zero()


def test_order_and_initial_form_examples():
    nu, init = order_and_initial_form(R.from_string("X*Z - Y^3"))
    assert nu == 2 and init == R.from_string("X*Z")
    nu, init = order_and_initial_form(R.from_string("X^4 - Y*Z"))
    assert nu == 2 and init == R.from_string("-Y*Z")
    v = Vector.from_polys([R.gen(0), R.gen(1) ** 2])
    nu, init = order_and_initial_form(v)
    assert nu == 1 and init == Vector.from_polys([R.gen(0), R.zero()])


def test_order_of_zero_is_an_error():
    with pytest.raises(ValueError):
        order_and_initial_form(R.zero())


@settings(max_examples=60)
@given(poly_strategy, poly_strategy)
def test_initial_form_multiplicative(f, g):
    # the polynomial ring is a domain: in(fg) = in(f) in(g)
    if f.is_zero() or g.is_zero():
        return
    nu_f, in_f = order_and_initial_form(f)
    nu_g, in_g = order_and_initial_form(g)
    nu, init = order_and_initial_form(f * g)
    assert nu == nu_f + nu_g
    assert init == in_f * in_g


def test_leading_terms_by_flavor():
    f = R.from_string("X + X^2")
    assert f.leading_term(GREVLEX)[0] == (2, 0, 0)
    assert f.leading_term(DS)[0] == (1, 0, 0)
    assert [e for _, e in f.sorted_terms(DS)] == [(1, 0, 0), (2, 0, 0)]


def test_layout_degrees():
    lay = FreeLayout(2, (0, 3))
    v = Vector(R, 2, {(0, (1, 2, 0)): 1})
    assert v.degree_in(lay) == 3
    w = Vector(R, 2, {(1, (0, 0, 0)): 1})
    assert w.degree_in(lay) == 3
    assert (v + w).is_homogeneous(lay)
    with pytest.raises(ValueError):
        FreeLayout(2, (1,))
