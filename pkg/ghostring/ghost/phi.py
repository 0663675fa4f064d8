"""
The ghost map phi on homomorphisms of a windowed truncation of D.

phi(f) is f at the punctured ghost with its zero at 0 when f has zeroring
image, and at the index right after the critical coordinate otherwise.  On
any finite set of homomorphisms phi agrees with evaluation at a punctured
ghost whose zero avoids every critical coordinate, yet the family of values
phi takes on the coordinate projections is the ghost itself.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..claim.parity import parity_check
from ..closure.subring import DEFAULT_CAP, GeneratedRing, build_D
from ..core.errors import VerificationFailure, WindowTooSmall
from ..core.seeds import derive_rng
from ..core.vectors import ECVector, Window, ghost, punctured_ghost
from ..homs.classify import classify, interior_indices, punctured_value
from ..homs.enumerate import DEFAULT_BUDGET, Hom, enumerate_homs, middle_projection, projection_hom
from ..report import Report

logger = logging.getLogger(__name__)

CONCLUSION = "Z8 does not admit a natural duality"

# windows up to this many blocks get their full hom-set enumerated
ENUMERATION_LIMIT = 3


@dataclass(frozen=True)
class PhiPoint:
    """Where phi(f) was read off."""
    value: int
    index: int
    shift: int = 0


def phi_index(f: Hom, margin: Optional[int] = None) -> Tuple[int, int]:
    """Punctured index defining phi(f), and the shift applied to reach it.

    With `margin` None any index is used, since the restricted punctured
    ghost is the image of the infinite one.  With a margin the index must be
    interior; the zeroring index 0 is moved to the nearest interior index.
    """
    cls = classify(f)
    index = 0 if cls.is_zeroring else cls.critical + 1  # type: ignore[operator]
    if margin is None:
        return index, 0
    interior = interior_indices(f.ring.window, margin)
    if not len(interior):
        raise WindowTooSmall(f"Window {f.ring.window} has no index with margin {margin}")
    if index in interior:
        return index, 0
    if cls.is_zeroring:
        nearest = min(interior, key=lambda m: (abs(m - index), m))
        return nearest, nearest - index
    raise WindowTooSmall(f"phi needs punctured index {index}, not interior to {f.ring.window}")


def phi_point(f: Hom, margin: Optional[int] = None) -> PhiPoint:
    index, shift = phi_index(f, margin)
    return PhiPoint(punctured_value(f, index), index, shift)


def phi(f: Hom, margin: Optional[int] = None) -> int:
    return phi_point(f, margin).value


def witness_candidates(window: Window, margin: Optional[int] = None) -> range:
    if margin is None:
        return range(window.lo - 2, window.hi + 3)
    return interior_indices(window, margin)


def finite_witness(homs: Sequence[Hom], margin: Optional[int] = None) -> Tuple[ECVector, int]:
    """A punctured ghost on which every hom in the list takes its phi value.

    Returns the vector and its zero index.  Raises WindowTooSmall when every
    candidate index is a critical coordinate.
    """
    if not homs:
        return punctured_ghost(0), 0
    window = homs[0].ring.window
    criticals = {classify(f).critical for f in homs}
    for m in witness_candidates(window, margin):
        if m in criticals:
            continue
        for f in homs:
            if punctured_value(f, m) != phi(f, margin):
                raise VerificationFailure("finite_witness", {"index": m, "images": f.images})
        return punctured_ghost(m), m
    raise WindowTooSmall(f"Every candidate index on {window} is a critical coordinate; enlarge the window")


def continuity_key(f: Hom) -> Tuple[int, int, int]:
    return (punctured_value(f, 0), punctured_value(f, 1), punctured_value(f, 2))


def continuity_check(f: Hom, g: Hom) -> bool:
    """Agreement on the punctured ghosts at 0, 1 and 2 implies equal phi."""
    if continuity_key(f) != continuity_key(g):
        return True
    return phi(f) == phi(g)


def continuity_all_pairs(homs: Sequence[Hom]) -> Optional[Tuple[Hom, Hom]]:
    """A pair violating the continuity implication, or None.

    Pairs are grouped by their three agreement values, which covers every pair.
    """
    groups: Dict[Tuple[int, int, int], Dict[int, Hom]] = defaultdict(dict)
    for f in homs:
        groups[continuity_key(f)].setdefault(phi(f), f)
    for by_value in groups.values():
        if len(by_value) > 1:
            first, second = list(by_value.values())[:2]
            return first, second
    return None


def witness_universality(homs: Sequence[Hom], subset_size: int, samples: int, seed: int) -> Dict[str, object]:
    """Finite witnesses exist for every subset of at most `subset_size` homs.

    Each hom takes its phi value at every candidate index except its
    critical coordinate, so a subset of k homs leaves at least
    len(candidates) - k admissible indices.  That per-hom property is checked
    for all homs; random subsets are then run through finite_witness.
    """
    if not homs:
        return {"per_hom": True, "candidates": 0, "sampled": 0}
    window = homs[0].ring.window
    candidates = list(witness_candidates(window))
    for f in homs:
        target = phi(f)
        critical = classify(f).critical
        for m in candidates:
            if m != critical and punctured_value(f, m) != target:
                raise VerificationFailure("witness_universality", {"index": m, "images": f.images})
    if len(candidates) <= subset_size:
        raise WindowTooSmall(f"{len(candidates)} candidate indices cannot serve subsets of size {subset_size}")

    rng = derive_rng(seed, "ghost/subsets")
    sampled = 0
    if len(homs) <= 8:
        subsets = [list(s) for k in range(1, subset_size + 1) for s in itertools.combinations(homs, k)]
    else:
        subsets = []
        for _ in range(samples):
            k = int(rng.integers(1, subset_size + 1))
            picks = rng.choice(len(homs), size=k, replace=False)
            subsets.append([homs[int(p)] for p in picks])
    for subset in subsets:
        finite_witness(subset)
        sampled += 1
    return {"per_hom": True, "candidates": len(candidates), "sampled": sampled}


@dataclass
class PhiReport:
    """phi on a hom set, its witnesses and continuity, and the verdict."""
    window: Window
    hom_set: str
    phi_values: List[Dict[str, object]] = field(default_factory=list)
    classifications: Dict[str, int] = field(default_factory=dict)
    projection_values: Dict[int, int] = field(default_factory=dict)
    witnesses: Dict[str, object] = field(default_factory=dict)
    continuity: bool = False
    ghost_excluded: bool = False
    verdict: bool = False

    def to_report(self) -> Report:
        report = Report("ghost-demo")
        report.check("phi_middle_projection_is_4", all(v == 4 for v in self.projection_values.values()),
                     {j: v for j, v in self.projection_values.items() if v != 4})
        report.check("ghost_excluded", self.ghost_excluded)
        report.check("continuity", self.continuity)
        report.check("witness_universality", bool(self.witnesses.get("per_hom")))
        report.check("verdict", self.verdict)
        report.data.update({
            "window": str(self.window),
            "hom_set": self.hom_set,
            "phi": self.phi_values,
            "classifications": self.classifications,
            "projection_values": {str(j): v for j, v in self.projection_values.items()},
            "witnesses": self.witnesses,
            "conclusion": CONCLUSION if self.verdict else None,
        })
        return report


def projection_homs(ring: GeneratedRing) -> List[Hom]:
    """The zero map and every flattened coordinate projection."""
    homs = [projection_hom(ring, k) for k in range(3 * ring.window.size)]
    homs.append(Hom.from_images(ring, (0,) * len(ring.generators)))
    return homs


def non_evaluation_report(
    window: Window,
    homs: Optional[Sequence[Hom]] = None,
    ring: Optional[GeneratedRing] = None,
    cap: int = DEFAULT_CAP,
    budget: int = DEFAULT_BUDGET,
    subset_size: int = 4,
    subset_samples: int = 2_000,
    seed: int = 0,
    workers: int = 1,
) -> PhiReport:
    """phi is structure preserving on finite hom sets and continuous, yet its
    values on the projections form the ghost, which is not in D."""
    if ring is None:
        ring = build_D(window, cap=cap)
    if homs is not None:
        hom_set = "given"
    elif window.size <= ENUMERATION_LIMIT:
        homs = enumerate_homs(ring, budget=budget, workers=workers)
        hom_set = "enumerated"
    else:
        homs = projection_homs(ring)
        hom_set = "projections"

    report = PhiReport(window, hom_set)
    counts: Dict[str, int] = defaultdict(int)
    for f in homs:
        cls = classify(f)
        point = phi_point(f)
        counts[str(cls)] += 1
        report.phi_values.append({
            "images": f.images,
            "classification": cls.to_json(),
            "phi": point.value,
            "index": point.index,
            "shift": point.shift,
        })
    report.classifications = dict(sorted(counts.items()))
    report.projection_values = {j: phi(middle_projection(ring, j)) for j in window.indices()}
    report.witnesses = witness_universality(homs, subset_size, subset_samples, seed)
    report.continuity = continuity_all_pairs(homs) is None
    report.ghost_excluded = not parity_check(ghost())
    # the projection values assemble to the constant ab vector
    assembled = all(v == 4 for v in report.projection_values.values())
    report.verdict = assembled and report.ghost_excluded
    logger.info(f"Ghost map on {window} over {len(homs)} homomorphisms: verdict {report.verdict}")
    return report
