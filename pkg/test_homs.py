"""
Tests for homomorphism enumeration and classification on the window [-1, 1].
"""

from collections import Counter

import pytest

from ghostring.closure.subring import build_D
from ghostring.core.errors import BudgetExceeded
from ghostring.core.ring import TWO_Z8
from ghostring.core.seeds import derive_rng
from ghostring.core.vectors import Window, gen_bbar, ghost, punctured_ghost
from ghostring.homs.classify import (
    ZERORING, classify, ebar_images, image_is_zeroring, majority_exceptions, net_identity_vector,
    punctured_value, verify_classification,
)
from ghostring.homs.enumerate import (
    Hom, backtracking_order, enumerate_homs, enumerate_homs_additive, flat_coordinate, middle_projection,
    projection_hom, verify_hom,
)

HOM_COUNT = 640
ZERORING_COUNT = 64


def test_hom_count(small_homs):
    assert len(small_homs) == HOM_COUNT
    assert len({f.generator_images for f in small_homs}) == HOM_COUNT


def test_classification_counts(small_homs):
    counts = Counter(classify(f).kind for f in small_homs)
    assert counts[ZERORING] == ZERORING_COUNT
    assert sum(counts.values()) == HOM_COUNT


def test_methods_agree(small_ring, small_homs):
    additive = enumerate_homs_additive(small_ring)
    assert [f.generator_images for f in additive] == [f.generator_images for f in small_homs]


def test_parallel_enumeration_matches(small_ring, small_homs):
    parallel = enumerate_homs(small_ring, workers=2)
    assert [f.generator_images for f in parallel] == [f.generator_images for f in small_homs]


def test_images_in_two_z8(small_homs):
    for f in small_homs:
        assert set(f.generator_images) <= set(TWO_Z8)
        assert all(v % 2 == 0 for v in f.row_values)


def test_search_order(small_ring):
    names = [small_ring.generators[p][0] for p in backtracking_order(small_ring)]
    assert names[:6] == [f"e[{i}]" for i in range(-2, 4)]
    assert names[6:8] == ["abar0", "bbar"]
    assert all(name.startswith("d2") for name in names[8:])


def test_zero_map_and_projections_listed(small_ring, small_homs):
    listed = {f.generator_images for f in small_homs}
    assert (0,) * len(small_ring.generators) in listed
    for k in range(9):
        assert projection_hom(small_ring, k).generator_images in listed
    with pytest.raises(ValueError):
        projection_hom(small_ring, 9)


def test_projection_values(small_ring, small_window):
    f = middle_projection(small_ring, 0)
    assert flat_coordinate(small_ring, 0, 1) == 4
    # the middle coordinate of ab is 4
    assert f.value(ghost().restrict(small_window)) == 4
    assert f.value(punctured_ghost(0).restrict(small_window)) == 0
    assert f.value(punctured_ghost(1).restrict(small_window)) == 4


def test_projections_of_bbar(small_ring, small_window):
    bbar = gen_bbar().restrict(small_window)
    for block in small_window.indices():
        assert projection_hom(small_ring, flat_coordinate(small_ring, block, 0)).value(bbar) == 2


@pytest.mark.parametrize("block", [-1, 0, 1])
def test_middle_projection_is_critical_nearby(small_ring, block):
    cls = classify(middle_projection(small_ring, block))
    assert not cls.is_zeroring
    assert abs(cls.critical - block) <= 1


def test_values_agree_with_generator_images(small_ring, small_homs):
    for f in small_homs[::37]:
        for name, vector in small_ring.generators:
            assert f.value(vector) == f.image_of(name)


def test_homs_are_well_defined(small_homs):
    rng = derive_rng(0, "test/homs")
    for f in small_homs[::53]:
        assert verify_hom(f, rng, samples=50) is None


def test_bogus_images_are_caught(small_ring, small_homs):
    f = Hom.from_images(small_ring, (2,) * len(small_ring.generators))
    assert f.generator_images not in {g.generator_images for g in small_homs}
    rng = derive_rng(0, "test/bogus")
    assert verify_hom(f, rng, samples=200) is not None


def test_basis_check_is_exact_on_wider_windows():
    ring = build_D(Window(0, 1))
    assert ring.size > 100
    rng = derive_rng(0, "test/basis")
    assert verify_hom(projection_hom(ring, 4), rng, samples=0) is None
    assert verify_hom(Hom.from_images(ring, (0,) * len(ring.generators)), rng, samples=0) is None
    # bbar * abar0 is b^2 at 0 on this window, so d2b[0] would have to map to 4
    images = tuple(2 if name in ("bbar", "abar0") else 0 for name, _ in ring.generators)
    assert verify_hom(Hom.from_images(ring, images), rng, samples=0) is not None


def test_node_budget(small_ring):
    with pytest.raises(BudgetExceeded):
        enumerate_homs(small_ring, budget=10)
    with pytest.raises(BudgetExceeded):
        enumerate_homs_additive(small_ring, budget=10)


def test_classification_agrees_with_image_products(small_homs):
    for f in small_homs:
        assert classify(f).is_zeroring == image_is_zeroring(f)


def test_critical_coordinate(small_homs):
    for f in small_homs:
        cls = classify(f)
        if cls.is_zeroring:
            assert cls.critical is None
            assert str(cls) == "ZeroringImage"
            continue
        assert cls.critical == cls.leading + 1
        assert ebar_images(f)[cls.leading] in (2, 6)
        assert str(cls) == f"Critical({cls.critical})"
        net = net_identity_vector(cls.critical).restrict(f.ring.window)
        assert f.value(net) == 0


def test_punctured_values_differ_only_at_critical(small_homs):
    for f in small_homs:
        profile = {m: punctured_value(f, m) for m in range(-4, 5)}
        exceptions = majority_exceptions(profile)
        cls = classify(f)
        assert exceptions in ([], [cls.critical])


def test_verify_classification(small_ring, small_homs):
    report = verify_classification(small_ring, small_homs)
    assert report.passed, report.counterexamples
    assert report.data["hom_count"] == HOM_COUNT
    assert report.data["classification_counts"][ZERORING] == ZERORING_COUNT
