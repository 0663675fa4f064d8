"""
Zeroring-image versus critical-coordinate classification of homomorphisms,
and the checks that follow from it.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from ..closure.subring import GeneratedRing
from ..core.ring import z8_mul
from ..core.vectors import Window, gen_bbar, gen_ebar, ghost, punctured_ghost
from ..report import Report
from .enumerate import Hom

logger = logging.getLogger(__name__)

ZERORING = "zeroring"
CRITICAL = "critical"

# punctured indices this close to the window edge are left out of equality checks
INTERIOR_MARGIN = 3


@dataclass(frozen=True)
class Classification:
    """ZeroringImage, or Critical with its leading and critical indices.

    `leading` is the smallest e-bar index whose image is 2 or 6.  The
    critical coordinate, the one punctured index whose image may differ from
    the rest, sits one step to its right.
    """
    kind: str
    leading: Optional[int] = None

    @property
    def critical(self) -> Optional[int]:
        return None if self.leading is None else self.leading + 1

    @property
    def is_zeroring(self) -> bool:
        return self.kind == ZERORING

    def to_json(self) -> Dict[str, object]:
        if self.is_zeroring:
            return {"kind": ZERORING}
        return {"kind": CRITICAL, "leading": self.leading, "critical": self.critical}

    def __str__(self) -> str:
        return "ZeroringImage" if self.is_zeroring else f"Critical({self.critical})"


ZERORING_IMAGE = Classification(ZERORING)


def ebar_images(f: Hom) -> Dict[int, int]:
    """Images of the e-bar generators, keyed by index."""
    out = {}
    for name, value in f.images.items():
        if name.startswith("e["):
            out[int(name[2:-1])] = value
    return out


def classify(f: Hom) -> Classification:
    odd_halves = sorted(i for i, v in ebar_images(f).items() if v in (2, 6))
    if not odd_halves:
        return ZERORING_IMAGE
    return Classification(CRITICAL, odd_halves[0])


def image_is_zeroring(f: Hom) -> bool:
    """f(x) f(y) = 0 on the images of the finite-support generators."""
    values = [v for name, v in f.images.items() if name.startswith(("e[", "d2"))]
    return all(z8_mul(x, y) == 0 for x in values for y in values)


def punctured_value(f: Hom, m: int) -> int:
    return f.value(punctured_ghost(m).restrict(f.ring.window))


def interior_indices(window: Window, margin: int = INTERIOR_MARGIN) -> range:
    return range(window.lo + margin, window.hi - margin + 1)


def punctured_profile(f: Hom, indices: Sequence[int]) -> Dict[int, int]:
    return {m: punctured_value(f, m) for m in indices}


def majority_exceptions(profile: Dict[int, int]) -> List[int]:
    """Indices whose value differs from the most common one."""
    if not profile:
        return []
    majority, _ = Counter(profile.values()).most_common(1)[0]
    return [m for m, v in profile.items() if v != majority]


def net_identity_vector(c: int):
    """e_c * (e_c + e_{c-3} + e_{c+3} + b-bar), equal to ab at c-2 plus ab at c+1."""
    e = gen_ebar(c)
    return e * (e + gen_ebar(c - 3) + gen_ebar(c + 3) + gen_bbar())


def full_range(window: Window) -> range:
    """Punctured indices whose restriction is checked beyond the interior."""
    return range(window.lo - INTERIOR_MARGIN, window.hi + INTERIOR_MARGIN + 1)


def verify_classification(ring: GeneratedRing, homs: Sequence[Hom]) -> Report:
    """Image containment, e-bar decay and punctured-image equality for every hom."""
    report = Report("classify-homs")
    window = ring.window
    interior = list(interior_indices(window))
    checked = list(full_range(window))
    counts: Counter = Counter()

    image_bad = []
    decay_bad = []
    interior_bad = []
    full_bad = []
    zeroring_bad = []
    net_bad = []
    for f in homs:
        cls = classify(f)
        counts[cls.kind] += 1
        if any(v % 2 for v in f.row_values) or any(v % 2 for v in f.generator_images):
            image_bad.append(f.images)
        if cls.is_zeroring != image_is_zeroring(f):
            zeroring_bad.append(f.images)

        profile = punctured_profile(f, checked)
        if cls.is_zeroring:
            if len(set(profile.values())) > 1:
                full_bad.append({"images": f.images, "profile": profile})
            if len({profile[m] for m in interior}) > 1:
                interior_bad.append({"images": f.images, "profile": profile})
            continue

        for j, v in ebar_images(f).items():
            if abs(j - cls.leading) > 3 and v not in (0, 4):
                decay_bad.append({"images": f.images, "index": j})
        others = {profile[m] for m in checked if m != cls.critical}
        if len(others) > 1:
            full_bad.append({"images": f.images, "profile": profile, "critical": cls.critical})
        if len({profile[m] for m in interior if m != cls.critical}) > 1:
            interior_bad.append({"images": f.images, "critical": cls.critical})
        exceptions = majority_exceptions(profile)
        if len(exceptions) > 1 or (exceptions and exceptions[0] != cls.critical):
            full_bad.append({"images": f.images, "exceptions": exceptions, "critical": cls.critical})

        net = net_identity_vector(cls.critical).restrict(window)
        if f.value(net) != 0:
            net_bad.append({"images": f.images, "critical": cls.critical})

    report.check("image_in_2Z8", not image_bad, image_bad[:1])
    report.check("classification_matches_products", not zeroring_bad, zeroring_bad[:1])
    report.check("ebar_decay", not decay_bad, decay_bad[:1])
    report.check("interior_punctured_equal", not interior_bad, interior_bad[:1])
    report.check("punctured_equal_off_critical", not full_bad, full_bad[:1])
    report.check("net_identity_image_zero", not net_bad, net_bad[:1])

    zero_ghost_images = [f.images for f in homs if f.is_zero() and f.value(ghost().restrict(window)) != 0]
    report.check("zero_map_vanishes", not zero_ghost_images, zero_ghost_images[:1])

    report.data["window"] = str(window)
    report.data["hom_count"] = len(homs)
    report.data["classification_counts"] = dict(sorted(counts.items()))
    report.data["interior_indices"] = interior
    report.data["note"] = (
        "Results hold for the generated restriction on this window; every homomorphism "
        "of the restriction pulls back to one of D along the coordinate projection."
    )
    logger.info(f"Classified {len(homs)} homomorphisms on {window}: {dict(counts)}")
    return report
