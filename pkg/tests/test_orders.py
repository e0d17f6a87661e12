from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aggraded.orders import DS, GREVLEX, compare

mon3 = st.tuples(*[st.integers(min_value=0, max_value=5)] * 3)


def test_global_grevlex_examples():
    # x^2 y vs x y^2
    assert compare((2, 1, 0), (1, 2, 0), GREVLEX) == 1
    assert compare((1, 2, 0), (2, 1, 0), GREVLEX) == -1


def test_local_degree_anticompatible():
    # x vs x^2: lower degree leads locally
    assert compare((1, 0, 0), (2, 0, 0), DS) == 1


def test_reflexive():
    assert compare((1, 2, 3), (1, 2, 3), GREVLEX) == 0
    assert compare((1, 2, 3), (1, 2, 3), DS) == 0


def test_mismatched_variable_counts():
    with pytest.raises(ValueError):
        compare((1, 0), (1, 0, 0), GREVLEX)


@pytest.mark.parametrize("order", [GREVLEX, DS])
@given(a=mon3, b=mon3, c=mon3, q=mon3)
def test_total_multiplicative(order, a, b, c, q):
    # antisymmetry
    assert compare(a, b, order) == -compare(b, a, order)
    # transitivity on a sorted triple
    lo, mid, hi = sorted([a, b, c], key=order.mon_key)
    assert compare(lo, hi, order) <= 0
    # multiplicativity
    aq = tuple(x + y for x, y in zip(a, q))
    bq = tuple(x + y for x, y in zip(b, q))
    assert compare(aq, bq, order) == compare(a, b, order)


def test_global_divisibility_exhaustive_deg6():
    mons = [m for m in product(range(7), repeat=3) if sum(m) <= 6]
    for a in mons:
        for b in mons:
            if all(x <= y for x, y in zip(a, b)):
                assert compare(a, b, GREVLEX) <= 0


def test_local_leading_term_has_minimal_degree():
    mons = [m for m in product(range(4), repeat=3) if sum(m) <= 4]
    best = max(mons, key=DS.mon_key)
    assert sum(best) == 0


def test_module_order_shifts_and_position():
    # term-over-position with shifts; ascending position as final tie-break
    a = (0, (1, 0, 0))
    b = (1, (1, 0, 0))
    assert compare(a, b, GREVLEX) == 1
    # a twist can flip the degree comparison
    assert compare(a, b, GREVLEX, shifts=(0, 5)) == -1
    assert compare(a, b, DS, shifts=(0, 5)) == 1
