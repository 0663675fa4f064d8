"""
Tests for quadratic sets over F2, affine 3-flats and the Q3-but-not-Q search.
"""

import json

import pytest
from hypothesis import given, settings, strategies as st

from ghostring.core.seeds import derive_rng
from ghostring.quadratic.gf2 import (
    PointSet, QuadPoly, brute_force_q_sets, eval_poly, has_Q, monomial_count, solution_set, solve_gf2,
)
from ghostring.quadratic.search import (
    ABSENT, EXHAUSTED, STATE_SCHEMA, check_counterexample_certificate, check_q_implies_q3,
    counterexample_certificate,
    exhaustive_search, is_counterexample, orbit_representatives, random_search,
    sindi_search,
)
from ghostring.quadratic.subspaces import (
    FlatIndex, agl_generators, enumerate_affine_3subspaces, gaussian_binomial, has_Q3, random_affine_map,
    restrict_to_subspace, subspaces_for,
)

masks4 = st.integers(min_value=0, max_value=(1 << 16) - 1)


def test_monomial_count():
    assert monomial_count(3) == 7
    assert monomial_count(4) == 11


def test_polynomial_evaluation():
    q = QuadPoly.from_terms(3, constant=1, linear=[0], quadratic=[(2, 1)])
    assert str(q) == "1 + x0 + x1x2"
    assert eval_poly(q, 0b000) == 1
    assert eval_poly(q, 0b001) == 0
    assert eval_poly(q, 0b110) == 0
    assert eval_poly(q, 0b111) == 1
    assert solution_set(q) == PointSet.from_points(3, [0b001, 0b011, 0b101, 0b110])


def test_solve_gf2():
    # x0 + x1 = 1, x1 = 1
    assert solve_gf2([0b111, 0b110], 2) == 0b10
    assert solve_gf2([0b101, 0b001], 2) is None
    assert solve_gf2([], 3) == 0


def test_solution_set_edge_cases():
    assert solution_set(QuadPoly(3)) == PointSet.full(3)
    assert solution_set(QuadPoly.from_terms(3, constant=1)) == PointSet(3, 0)
    # x0x1 + x0 + x1 vanishes only at the origin
    q = QuadPoly.from_terms(2, linear=[0, 1], quadratic=[(0, 1)])
    assert solution_set(q) == PointSet.from_points(2, [0])


def test_has_q_of_full_and_empty_sets():
    assert has_Q(PointSet.full(4)) == QuadPoly(4)
    assert has_Q(PointSet(4, 0)) == QuadPoly.from_terms(4, constant=1)
    assert has_Q3(PointSet.full(5)) == (True, None)


def test_quadratic_sets_have_q3():
    assert check_q_implies_q3(5, 1000, seed=0) is None
    assert check_q_implies_q3(4, 200, seed=3) is None


def test_q_sets_in_three_dimensions():
    q_sets = brute_force_q_sets(3)
    assert len(q_sets) == 128
    assert all(bin(mask).count("1") % 2 == 0 for mask in q_sets)


def test_has_q_matches_brute_force():
    q_sets = brute_force_q_sets(3)
    for mask in range(256):
        assert (has_Q(PointSet(3, mask)) is not None) == (mask in q_sets)


@settings(max_examples=60)
@given(masks4)
def test_has_q_returns_a_defining_quadratic(mask):
    s = PointSet(4, mask)
    q = has_Q(s)
    if q is not None:
        assert solution_set(q) == s


def test_point_set_basics():
    s = PointSet.from_points(3, [0, 5])
    assert 5 in s and 1 not in s
    assert len(s) == 2
    assert list(s.points()) == [0, 5]
    assert len(s.complement()) == 6
    assert s.hex() == "0x21"
    with pytest.raises(ValueError):
        PointSet(2, 1 << 4)


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 30), (5, 620)])
def test_flat_counts(n, expected):
    flats = subspaces_for(n)
    assert len(flats) == expected
    assert len(flats) == gaussian_binomial(n, 3) * 2 ** (n - 3)
    assert len({frozenset(w.points()) for w in flats}) == expected
    assert all(len(set(w.points())) == 8 for w in flats)


def test_gaussian_binomial():
    assert gaussian_binomial(4, 3) == 15
    assert gaussian_binomial(5, 3) == 155
    assert gaussian_binomial(3, 4) == 0


def test_subspaces_need_three_dimensions():
    with pytest.raises(ValueError):
        list(enumerate_affine_3subspaces(2))


def test_restriction_to_a_flat():
    w = subspaces_for(4)[0]
    s = PointSet.from_points(4, w.points()[:2])
    assert restrict_to_subspace(s, w) == PointSet(3, 0b11)
    with pytest.raises(ValueError):
        restrict_to_subspace(PointSet(3, 1), w)


def test_q3_in_three_dimensions_is_q():
    for mask in range(256):
        s = PointSet(3, mask)
        assert has_Q3(s)[0] == (has_Q(s) is not None)


def test_q3_failure_names_a_flat():
    s = PointSet.from_points(4, [0])
    ok, w = has_Q3(s)
    assert not ok
    assert 0 in w.points()


@settings(max_examples=40)
@given(masks4, st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_properties_are_affine_invariant(mask, seed):
    s = PointSet(4, mask)
    g = random_affine_map(4, derive_rng(seed, "test/agl"))
    image = g.apply(s)
    assert len(image) == len(s)
    assert (has_Q(image) is None) == (has_Q(s) is None)
    assert has_Q3(image)[0] == has_Q3(s)[0]


def test_agl_generators_are_invertible():
    assert all(g.is_invertible() for g in agl_generators(4))


def test_orbit_representatives():
    reps = orbit_representatives(3)
    assert reps[0] == 0
    assert (1 << 8) - 1 in reps
    assert len(reps) < 256
    # the empty set, singletons and pairs are single orbits
    assert 1 in reps and 3 in reps
    assert 2 not in reps


@settings(max_examples=30)
@given(masks4)
def test_flat_index_agrees_with_has_q3(mask):
    flats = FlatIndex(4)
    assert (not flats.failing(mask)) == has_Q3(PointSet(4, mask))[0]


@pytest.mark.parametrize("n", [3, 4])
def test_exhaustive_search_finds_nothing(n):
    outcome = exhaustive_search(n)
    assert outcome.status == ABSENT
    assert outcome.definitive
    assert outcome.counterexample is None
    assert outcome.stats["flats"] == len(subspaces_for(n))


def test_exhaustive_search_limits():
    with pytest.raises(ValueError):
        exhaustive_search(5)
    with pytest.raises(ValueError):
        sindi_search(4, mode="sideways")


def test_random_search_exhausts_budget(tmp_path):
    state = tmp_path / "search.json"
    outcome = random_search(5, budget=120, seed=7, restarts=4, resume=state)
    assert outcome.status == EXHAUSTED
    assert not outcome.definitive
    assert outcome.stats["restarts"] == 4
    saved = json.loads(state.read_text())
    assert saved["schema"] == STATE_SCHEMA
    assert sorted(r["restart"] for r in saved["completed"]) == [0, 1, 2, 3]


def test_random_search_is_worker_independent():
    serial = random_search(4, budget=80, seed=3, restarts=4, workers=1)
    pooled = random_search(4, budget=80, seed=3, restarts=4, workers=2)
    assert serial.stats == pooled.stats


def test_random_search_resume(tmp_path):
    state = tmp_path / "search.json"
    first = random_search(4, budget=80, seed=3, restarts=4, resume=state)
    resumed = random_search(4, budget=80, seed=3, restarts=4, resume=state)
    assert resumed.stats == first.stats
    with pytest.raises(ValueError):
        random_search(4, budget=80, seed=4, restarts=4, resume=state)


def test_counterexample_certificate_rejects_quadratic_sets():
    s = PointSet.full(4)
    assert not is_counterexample(s)
    cert = counterexample_certificate(s)
    assert len(cert["subspaces"]) == 30
    assert not check_counterexample_certificate(cert)
