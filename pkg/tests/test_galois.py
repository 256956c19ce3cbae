import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quditqkd import galois
from quditqkd.galois import FieldError, field

from conftest import SHIPPED


# hand-derived tables, index = c0 + p*c1 + p^2*c2
GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
GF4_TRACE = [0, 0, 1, 1]
GF8_TRACE = [0, 1, 0, 1, 0, 1, 0, 1]
GF9_TRACE = [0, 2, 1, 0, 2, 1, 0, 2, 1]


def test_prime_power_detection():
    assert galois.prime_power(8) == (2, 3)
    assert galois.prime_power(9) == (3, 2)
    assert galois.prime_power(7) == (7, 1)
    for bad in (0, 1, 6, 10, 12):
        assert galois.prime_power(bad) is None
        assert not galois.is_prime_power(bad)


def test_gf4_tables_frozen():
    spec = field(4)
    assert spec.mul_table.tolist() == GF4_MUL
    assert spec.trace_table.tolist() == GF4_TRACE
    # characteristic 2: every element is its own negative
    assert spec.neg_table.tolist() == [0, 1, 2, 3]


def test_gf8_gf9_traces_frozen():
    assert field(8).trace_table.tolist() == GF8_TRACE
    assert field(9).trace_table.tolist() == GF9_TRACE


def test_prime_field_is_modular_arithmetic():
    spec = field(7)
    a, b = np.meshgrid(range(7), range(7), indexing="ij")
    assert np.array_equal(spec.add_table, (a + b) % 7)
    assert np.array_equal(spec.mul_table, (a * b) % 7)
    assert spec.trace_table.tolist() == list(range(7))


@pytest.mark.parametrize("d", SHIPPED)
def test_multiplicative_group_is_cyclic(d):
    spec = field(d)
    orders = []
    for g in range(1, d):
        x, k = g, 1
        while x != 1:
            x = spec.mul_table[x, g]
            k += 1
        orders.append(k)
    assert max(orders) == d - 1


@pytest.mark.parametrize("d", SHIPPED)
def test_inverse_table(d):
    spec = field(d)
    assert spec.inv_table[0] == -1
    for a in range(1, d):
        assert spec.mul_table[a, spec.inv_table[a]] == 1


@pytest.mark.parametrize("d", SHIPPED)
def test_trace_balanced(d):
    # each value of GF(p) is hit d/p times
    spec = field(d)
    counts = np.bincount(spec.trace_table, minlength=spec.p)
    assert counts.tolist() == [d // spec.p] * spec.p


def test_element_operators():
    spec = field(9)
    a, b = spec(4), spec(7)
    assert (a + b).index == spec.add_table[4, 7]
    assert (a * b).index == spec.mul_table[4, 7]
    assert (-a).index == spec.neg_table[4]
    assert galois.mul(a, galois.inv(a)).index == 1
    assert galois.trace(a) == GF9_TRACE[4]
    with pytest.raises(ZeroDivisionError):
        galois.inv(spec(0))


def test_rejects_bad_orders_and_moduli():
    with pytest.raises(FieldError):
        field(6)
    with pytest.raises(FieldError):
        field(4, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2 over GF(2)


def test_alternative_modulus_gives_isomorphic_field():
    spec = field(9, modulus=(2, 2, 1))  # x^2 + 2x + 2, irreducible over GF(3)
    assert sorted(np.bincount(spec.trace_table).tolist()) == [3, 3, 3]


def test_elements_and_pairs():
    spec = field(4)
    assert [e.index for e in galois.elements(spec)] == [0, 1, 2, 3]
    assert list(galois.iter_pairs(spec)) == list(itertools.product(range(4), repeat=2))


@given(st.sampled_from(SHIPPED), st.data())
def test_distributive_property(d, data):
    spec = field(d)
    a, b, c = (spec(data.draw(st.integers(0, d - 1))) for _ in range(3))
    assert (a * (b + c)).index == (a * b + a * c).index
    # Frobenius is additive
    p = spec.p
    assert _pow(a + b, p).index == (_pow(a, p) + _pow(b, p)).index


def _pow(z, k):
    out = z.spec(1)
    for _ in range(k):
        out = out * z
    return out
