"""
Tests for the parity-check invariant and the claim verification suite.
"""

import pytest
from hypothesis import given, settings, strategies as st

from ghostring.claim.parity import (
    check_closure_under_addition, check_random_sums, claim_generating_family, evaluate_symbolic, family_generators,
    parity_check, reduce_squares, symbolic_witness, validate_parity_vector, verify_claim,
)
from ghostring.closure.certificates import check_certificate, read_certificates
from ghostring.core.errors import NotInRingError
from ghostring.core.ring import A, AB, ZERO
from ghostring.core.vectors import ECVector, Window, gen_abar, gen_bbar, gen_ebar, ghost, punctured_ghost


def test_parity_check_cases():
    assert parity_check(ECVector.zero())
    assert not parity_check(ghost())
    assert parity_check(punctured_ghost(7))
    assert parity_check(ECVector.build(ZERO, {0: AB, 3: AB}))
    assert not parity_check(ECVector.single(0, AB))
    assert not parity_check(ECVector.build(AB, {0: ZERO, 1: ZERO}))


def test_parity_check_rejects_other_values():
    with pytest.raises(NotInRingError):
        validate_parity_vector(ECVector.single(0, A))


def test_reduce_squares_keeps_ab_component():
    product = gen_bbar() * gen_abar(0)
    reduced = reduce_squares(product)
    assert reduced.eventual == AB
    assert reduced.exception_map == {-1: ZERO, 0: ZERO, 1: ZERO}
    assert parity_check(reduced)


@given(st.integers(min_value=-10, max_value=10))
def test_reduce_squares_of_ebar_products(i):
    assert reduce_squares(gen_ebar(i) * gen_ebar(i)).is_zero()
    assert reduce_squares(gen_ebar(i) * gen_ebar(i + 3)).is_zero()
    assert reduce_squares(gen_ebar(i) * gen_ebar(i + 2)) == ECVector.build(ZERO, {i: AB, i + 1: AB})


PRODUCT_GENERATORS = family_generators(Window(-3, 3))
pair_indices = st.tuples(
    st.integers(min_value=0, max_value=len(PRODUCT_GENERATORS) - 1),
    st.integers(min_value=0, max_value=len(PRODUCT_GENERATORS) - 1),
)


def sum_of_products(pairs):
    total = ECVector.zero()
    for i, j in pairs:
        total = total + PRODUCT_GENERATORS[i][1] * PRODUCT_GENERATORS[j][1]
    return total


@settings(max_examples=60)
@given(st.lists(pair_indices, max_size=5), st.lists(pair_indices, max_size=5))
def test_reduce_squares_is_additive(left, right):
    u, v = sum_of_products(left), sum_of_products(right)
    assert reduce_squares(u + v) == reduce_squares(u) + reduce_squares(v)


def test_generating_family_passes():
    family = claim_generating_family(Window(-3, 3))
    assert all(parity_check(m.vector) for m in family)
    assert all(m.vector.is_zero() for m in family if m.left.startswith("d2") or m.right.startswith("d2"))


def test_generating_family_without_squares():
    with_d2 = claim_generating_family(Window(-1, 1))
    without = claim_generating_family(Window(-1, 1), include_d2=False)
    assert len(without) < len(with_d2)
    assert not any(m.left.startswith("d2") for m in without)


@settings(max_examples=40)
@given(st.integers(min_value=-10, max_value=10))
def test_symbolic_witness_is_punctured_ghost(i):
    assert evaluate_symbolic(symbolic_witness(i)) == punctured_ghost(i)


def test_random_sums_pass():
    family = claim_generating_family(Window(-2, 2))
    assert check_random_sums(family, sum_length=6, samples=300, seed=11, chunk_size=100) == []


def test_closure_under_addition():
    assert check_closure_under_addition(claim_generating_family(Window(-1, 1)), depth=2) is None


def test_verify_claim(tmp_path):
    path = tmp_path / "witnesses.json"
    report = verify_claim(
        Window(-2, 2),
        sum_length=4,
        samples=200,
        seed=3,
        chunk_size=50,
        witness_window=Window(-2, 2),
        witness_indices=(-1, 0, 1),
        certificates=path,
    )
    assert report.passed, report.counterexamples
    assert report.checks["ghost_excluded"] is True
    assert report.checks["constructive_membership"] is True
    certs = read_certificates(path)
    assert [c["label"] for c in certs] == ["punctured_ghost(-1)", "punctured_ghost(0)", "punctured_ghost(1)"]
    assert all(check_certificate(c) for c in certs)


def test_verify_claim_is_deterministic():
    kwargs = dict(sum_length=3, samples=100, seed=5, chunk_size=25,
                  witness_window=Window(-1, 1), witness_indices=(0,))
    first = verify_claim(Window(-1, 1), **kwargs).to_dict(include_timings=False)
    second = verify_claim(Window(-1, 1), **kwargs).to_dict(include_timings=False)
    assert first == second
