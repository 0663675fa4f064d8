"""
Tests for the ghost map phi: its values, finite witnesses, continuity and
the non-evaluation verdict.
"""

import pytest

from ghostring.claim.parity import parity_check
from ghostring.core.errors import WindowTooSmall
from ghostring.core.vectors import Window, ghost
from ghostring.ghost.phi import (
    CONCLUSION, continuity_all_pairs, continuity_check, finite_witness, non_evaluation_report, phi,
    phi_index, phi_point, projection_homs, witness_candidates, witness_universality,
)
from ghostring.homs.classify import classify, punctured_value
from ghostring.homs.enumerate import Hom, middle_projection


def test_phi_on_middle_projections(small_ring, small_window):
    for j in small_window.indices():
        assert phi(middle_projection(small_ring, j)) == 4


def test_phi_of_zero_map(small_ring):
    zero = Hom.from_images(small_ring, (0,) * len(small_ring.generators))
    assert phi(zero) == 0
    assert phi_index(zero) == (0, 0)


def test_phi_index_follows_classification(small_homs):
    for f in small_homs:
        cls = classify(f)
        index, shift = phi_index(f)
        assert shift == 0
        assert index == (0 if cls.is_zeroring else cls.critical + 1)
        assert phi_point(f).value == punctured_value(f, index)


def test_phi_index_margin(small_ring):
    zero = Hom.from_images(small_ring, (0,) * len(small_ring.generators))
    with pytest.raises(WindowTooSmall):
        phi_index(zero, margin=3)
    assert phi_index(zero, margin=1) == (0, 0)


def test_finite_witness(small_homs):
    subset = small_homs[::160]
    vector, m = finite_witness(subset)
    criticals = {classify(f).critical for f in subset}
    assert m not in criticals
    for f in subset:
        assert f.value(vector.restrict(f.ring.window)) == phi(f)


def test_finite_witness_of_nothing():
    vector, m = finite_witness([])
    assert m == 0
    assert parity_check(vector)


def test_witness_candidates():
    assert list(witness_candidates(Window(-1, 1))) == list(range(-3, 4))
    assert list(witness_candidates(Window(-5, 5), margin=3)) == [-2, -1, 0, 1, 2]


def test_witness_universality(small_homs):
    result = witness_universality(small_homs, subset_size=4, samples=200, seed=9)
    assert result["per_hom"] is True
    assert result["candidates"] == 7
    assert result["sampled"] == 200


def test_witness_universality_needs_room(small_homs):
    with pytest.raises(WindowTooSmall):
        witness_universality(small_homs, subset_size=7, samples=10, seed=0)


def test_continuity(small_homs):
    assert continuity_all_pairs(small_homs) is None
    f, g = small_homs[0], small_homs[-1]
    assert continuity_check(f, g)
    assert continuity_check(f, f)


def test_non_evaluation_on_enumerated_homs(small_window, small_ring, small_homs):
    report = non_evaluation_report(small_window, homs=small_homs, ring=small_ring, subset_samples=100)
    assert report.hom_set == "given"
    assert report.verdict
    assert report.continuity
    assert report.ghost_excluded
    assert report.projection_values == {-1: 4, 0: 4, 1: 4}
    summary = report.to_report()
    assert summary.passed, summary.counterexamples
    assert summary.data["conclusion"] == CONCLUSION


def test_non_evaluation_on_projections():
    window = Window(-2, 2)
    report = non_evaluation_report(window, subset_samples=50)
    assert report.hom_set == "projections"
    assert len(report.phi_values) == 3 * window.size + 1
    assert report.verdict
    assert not parity_check(ghost())


def test_projection_homs(small_ring):
    homs = projection_homs(small_ring)
    assert len(homs) == 10
    assert homs[-1].is_zero()
