"""
Tests for eventually constant vectors, windows and the named generators.
"""

import pytest
from hypothesis import given, strategies as st

from ghostring.core.errors import NotInRingError
from ghostring.core.ring import A, A_SQ, AB, B, B_SQ, ELEMENTS, ZERO
from ghostring.core.vectors import (
    ECVector, FiniteVector, Window, ebar_indices, gen_abar, gen_bbar, gen_ebar, gen_unital_variant,
    generator_vector, ghost, punctured_ghost, sum_vectors, verify_vector_identities,
)
from ghostring.homs.classify import net_identity_vector

indices = st.integers(min_value=-20, max_value=20)


def test_window_parse():
    window = Window.parse("-2:2")
    assert window == Window(-2, 2)
    assert window.size == 5
    assert list(window.indices()) == [-2, -1, 0, 1, 2]
    assert str(window) == "-2:2"
    assert 3 not in window


@pytest.mark.parametrize("text", ["", "2", "a:b", "1:2:3"])
def test_window_parse_rejects(text):
    with pytest.raises(ValueError):
        Window.parse(text)


def test_window_bounds_ordered():
    with pytest.raises(ValueError):
        Window(3, 1)


def test_canonical_form():
    v = ECVector.build(AB, {0: ZERO, 5: AB})
    assert v.exceptions == ((0, ZERO),)
    assert v.at(5) == AB
    assert v == punctured_ghost(0)


def test_generators():
    assert gen_bbar().eventual == B and not gen_bbar().exceptions
    assert gen_abar(0).exception_map == {-1: ZERO, 0: B, 1: ZERO}
    assert gen_abar(0).eventual == A
    assert gen_ebar(0).exception_map == {-2: A, -1: -B, 0: B, 1: -A}
    assert ghost() == ECVector.constant(AB)


@given(indices)
def test_ebar_is_abar_difference(i):
    assert gen_ebar(i) == gen_abar(i) - gen_abar(i - 1)


@given(indices, indices)
def test_distant_ebars_annihilate(i, j):
    product = gen_ebar(i) * gen_ebar(j)
    if abs(i - j) > 3:
        assert product.is_zero()
    else:
        assert set(product.support()) <= set(range(min(i, j) - 2, max(i, j) + 2))


@given(indices)
def test_adjacent_pair_product(i):
    assert gen_ebar(i) * gen_ebar(i + 2) == ECVector.build(ZERO, {i: AB, i + 1: AB})


@given(indices)
def test_net_identity(c):
    assert net_identity_vector(c) == ECVector.build(ZERO, {c - 2: AB, c + 1: AB})


@given(indices, st.sampled_from(ELEMENTS))
def test_squares_annihilate(j, x):
    assert (generator_vector(f"d2a[{j}]") * ECVector.constant(x)).is_zero()
    assert (generator_vector(f"d2b[{j}]") * ECVector.constant(x)).is_zero()


def test_generator_names():
    assert generator_vector("bbar") == gen_bbar()
    assert generator_vector("abar0") == gen_abar(0)
    assert generator_vector("e[-3]") == gen_ebar(-3)
    assert generator_vector("d2a[2]") == ECVector.single(2, A_SQ)
    assert generator_vector("d2b[-1]") == ECVector.single(-1, B_SQ)
    with pytest.raises(ValueError):
        generator_vector("abar1")


def test_sum_vectors_cancels():
    e = gen_ebar(4)
    assert sum_vectors([e, e.scaled(3)]).is_zero()
    assert sum_vectors([]) == ECVector.zero()


def test_json_form():
    v = punctured_ghost(-2) + gen_ebar(1)
    assert ECVector.from_json(v.to_json()) == v


def test_restriction_and_flatten():
    window = Window(-1, 1)
    restricted = gen_abar(0).restrict(window)
    assert restricted.values == (ZERO, B, ZERO)
    assert restricted.flatten() == (0, 0, 0, 2, 2, 0, 0, 0, 0)
    assert punctured_ghost(5).restrict(window) == ghost().restrict(window)


def test_ebar_flattened():
    assert gen_ebar(0).flatten(Window(-2, 1)) == (0, 2, 2, 6, 6, 0, 2, 2, 0, 0, 6, 6)
    assert gen_bbar().flatten(Window(0, 1)) == (2, 2, 0, 2, 2, 0)
    assert ghost().flatten(Window(0, 1)) == (0, 4, 0, 0, 4, 0)


@given(st.lists(st.sampled_from(ELEMENTS), min_size=3, max_size=3))
def test_z4_encoding(values):
    window = Window(0, 2)
    v = FiniteVector(window, tuple(values))
    assert FiniteVector.from_z4_vector(window, v.z4_vector()) == v
    assert FiniteVector.from_key(window, v.key) == v


def test_z4_decoding_rejects_odd_ab_coordinate():
    with pytest.raises(NotInRingError):
        FiniteVector.from_z4_vector(Window(0, 0), [0, 0, 1])


def test_finite_vector_window_mismatch():
    with pytest.raises(ValueError):
        FiniteVector.zero(Window(0, 1)) + FiniteVector.zero(Window(0, 2))


def test_ebar_indices_cover_window():
    window = Window(-1, 1)
    meeting = [i for i in range(-10, 10) if set(gen_ebar(i).support()) & set(window.indices())]
    assert list(ebar_indices(window)) == meeting


def test_unital_variant():
    a_prime, b_prime = gen_unital_variant()
    assert a_prime == (2, 2, 0, 0)
    assert b_prime == (0, 2, 2, 0)
    assert tuple(x * y % 8 for x, y in zip(a_prime, b_prime)) == (0, 4, 0, 0)


def test_verify_vector_identities():
    checks = verify_vector_identities(span=6)
    assert checks["net_identity"] is True
    assert checks["unital_variant"] == [[2, 2, 0, 0], [0, 2, 2, 0]]
