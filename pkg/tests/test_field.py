import pytest
from hypothesis import given
from hypothesis import strategies as st

from aggraded.field import PrimeField, is_prime

F = PrimeField(32003)


def test_default_modulus_is_prime():
    assert is_prime(32003)
    assert not is_prime(32001)
    assert is_prime(2) and is_prime(3) and not is_prime(1) and not is_prime(0)


def test_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(32004)


@given(st.integers(), st.integers(), st.integers())
def test_ring_axioms(a, b, c):
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)


@given(st.integers(min_value=1, max_value=32002))
def test_inverse(a):
    assert F.mul(a, F.inv(a)) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(st.integers())
def test_representatives_reduced(a):
    assert 0 <= F.reduce(a) < F.p
    assert F.sub(a, a) == 0
    assert F.add(a, F.neg(a)) == 0
