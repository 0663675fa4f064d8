"""
Affine 3-dimensional subspaces (3-flats) of F2^n, restriction of point sets
to them, and the local property Q3: every restriction is a quadratic
solution set.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import PointSet, has_Q


@dataclass(frozen=True)
class AffineSubspace3:
    """base + span(dirs) with three independent directions."""
    n: int
    base: int
    dirs: Tuple[int, int, int]

    def point(self, v: int) -> int:
        p = self.base
        for k, d in enumerate(self.dirs):
            if (v >> k) & 1:
                p ^= d
        return p

    def points(self) -> Tuple[int, ...]:
        """The 8 points, indexed by their parameter v in F2^3."""
        return tuple(self.point(v) for v in range(8))

    def to_json(self) -> Dict[str, object]:
        return {"base": self.base, "dirs": list(self.dirs)}


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_bases(n: int, k: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Reduced echelon bases of k-dimensional subspaces, with their pivot columns.

    Row r has its lowest set bit at pivot p_r, no bit at any other pivot and
    free bits only at non-pivot columns above p_r.
    """
    for pivots in itertools.combinations(range(n), k):
        free = [[c for c in range(p + 1, n) if c not in pivots] for p in pivots]
        for choice in itertools.product(*(range(1 << len(f)) for f in free)):
            rows = []
            for p, cols, bits in zip(pivots, free, choice):
                row = 1 << p
                for t, c in enumerate(cols):
                    if (bits >> t) & 1:
                        row |= 1 << c
                rows.append(row)
            yield tuple(rows), pivots


def enumerate_affine_3subspaces(n: int) -> Iterator[AffineSubspace3]:
    """Each affine 3-flat of F2^n exactly once.

    Linear parts come from reduced echelon bases; each coset is represented
    by the unique point supported off the pivot columns.
    """
    if n < 3:
        raise ValueError(f"Affine 3-subspaces need n >= 3, got {n}")
    for rows, pivots in _echelon_bases(n, 3):
        off_pivot = [c for c in range(n) if c not in pivots]
        for bits in range(1 << len(off_pivot)):
            base = 0
            for t, c in enumerate(off_pivot):
                if (bits >> t) & 1:
                    base |= 1 << c
            yield AffineSubspace3(n, base, rows)  # type: ignore[arg-type]


@lru_cache(maxsize=None)
def subspaces_for(n: int) -> Tuple[AffineSubspace3, ...]:
    return tuple(enumerate_affine_3subspaces(n))


def restrict_to_subspace(s: PointSet, w: AffineSubspace3) -> PointSet:
    """The 3-dimensional set of parameters v with base + v * dirs in S."""
    if s.n != w.n:
        raise ValueError(f"Dimension mismatch: set in F2^{s.n}, subspace in F2^{w.n}")
    mask = 0
    for v, p in enumerate(w.points()):
        if (s.mask >> p) & 1:
            mask |= 1 << v
    return PointSet(3, mask)


@lru_cache(maxsize=256)
def local_q(mask8: int) -> bool:
    """Whether a subset of F2^3 is a quadratic solution set."""
    return has_Q(PointSet(3, mask8)) is not None


def has_Q3(s: PointSet) -> Tuple[bool, Optional[AffineSubspace3]]:
    """Q on every 3-flat; on failure, the first failing flat in enumeration order."""
    for w in subspaces_for(s.n):
        if not local_q(restrict_to_subspace(s, w).mask):
            return False, w
    return True, None


class FlatIndex:
    """Point/flat incidence for fast repeated Q3 evaluation in one dimension."""

    def __init__(self, n: int):
        self.n = n
        self.flats = subspaces_for(n)
        self.flat_points: List[Tuple[int, ...]] = [w.points() for w in self.flats]
        self.flats_through: List[List[int]] = [[] for _ in range(1 << n)]
        for index, points in enumerate(self.flat_points):
            for p in points:
                self.flats_through[p].append(index)

    def local_mask(self, mask: int, index: int) -> int:
        out = 0
        for v, p in enumerate(self.flat_points[index]):
            if (mask >> p) & 1:
                out |= 1 << v
        return out

    def failing(self, mask: int) -> List[int]:
        return [i for i in range(len(self.flats)) if not local_q(self.local_mask(mask, i))]

    def failing_after_flip(self, mask: int, failing: set, point: int) -> set:
        """Failing flats once `point` is toggled; only flats through it change."""
        flipped = mask ^ (1 << point)
        out = set(failing)
        for i in self.flats_through[point]:
            if local_q(self.local_mask(flipped, i)):
                out.discard(i)
            else:
                out.add(i)
        return out


@dataclass(frozen=True)
class AffineMap:
    """v -> A v + t over F2, with A given by the images of the unit vectors."""
    n: int
    columns: Tuple[int, ...]
    translation: int = 0

    def __call__(self, v: int) -> int:
        out = self.translation
        for i, col in enumerate(self.columns):
            if (v >> i) & 1:
                out ^= col
        return out

    def permutation(self) -> Tuple[int, ...]:
        return tuple(self(v) for v in range(1 << self.n))

    def is_invertible(self) -> bool:
        return len(set(self.permutation())) == 1 << self.n

    def apply(self, s: PointSet) -> PointSet:
        return PointSet(s.n, permute_mask(s.mask, self.permutation()))


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for v, image in enumerate(perm):
        if (mask >> v) & 1:
            out |= 1 << image
    return out


def random_affine_map(n: int, rng: np.random.Generator) -> AffineMap:
    """A uniformly drawn invertible affine map (rejection sampling on A)."""
    while True:
        columns = tuple(int(c) for c in rng.integers(0, 1 << n, size=n))
        candidate = AffineMap(n, columns, int(rng.integers(0, 1 << n)))
        if candidate.is_invertible():
            return candidate


def agl_generators(n: int) -> List[AffineMap]:
    """Generators of AGL(n, 2): a translation, a transvection, a swap and a cycle."""
    units = [1 << i for i in range(n)]
    identity = tuple(units)
    gens = [AffineMap(n, identity, 1)]
    if n >= 2:
        transvection = list(units)
        transvection[1] = units[1] | units[0]  # x0 += x1
        gens.append(AffineMap(n, tuple(transvection)))
        swap = list(units)
        swap[0], swap[1] = units[1], units[0]
        gens.append(AffineMap(n, tuple(swap)))
    if n >= 3:
        gens.append(AffineMap(n, tuple(units[(i + 1) % n] for i in range(n))))
    return gens
