"""
Ring homomorphisms from a windowed truncation of D into Z8.

A generated ring is additively spanned by its generators and their pairwise
products (triple products vanish), so a homomorphism is fixed by the
generator images.  Two independent enumerations are provided:

  * backtracking over generator images in {0, 2, 4, 6}, propagating each
    partial assignment into a valued span of generators and their products;
    a vector reached twice with different values prunes the branch;
  * additive-basis filtering: every additive map from the Howell basis into
    2Z8 that respects the basis relations, kept when it is multiplicative on
    basis pairs.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..closure.span import Inconsistent, Z4Span, valued_span
from ..closure.subring import GeneratedRing
from ..core.errors import BudgetExceeded, NotInRingError, VerificationFailure
from ..core.expressions import Expr, evaluate_z8
from ..core.parallel import parallel_map
from ..core.ring import TWO_Z8, z8_mul
from ..core.vectors import FiniteVector

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Hom:
    """A homomorphism given by its generator images (in ring generator order)."""
    ring: GeneratedRing = field(compare=False, repr=False, hash=False)
    generator_images: Tuple[int, ...]
    row_values: Tuple[int, ...] = field(compare=False, repr=False)

    @classmethod
    def from_images(cls, ring: GeneratedRing, images: Sequence[int]) -> 'Hom':
        env = dict(zip((name for name, _ in ring.generators), images))
        row_values = tuple(evaluate_z8(expr, env) for _, expr in ring.basis)
        return cls(ring, tuple(int(v) % 8 for v in images), row_values)

    @property
    def images(self) -> Dict[str, int]:
        return {name: v for (name, _), v in zip(self.ring.generators, self.generator_images)}

    def image_of(self, name: str) -> int:
        return self.images[name]

    def value(self, x: FiniteVector) -> int:
        """f(x), expanding x in the additive basis of the domain."""
        coeffs = self.ring.span.reduce(x.z4_vector())
        if coeffs is None:
            raise NotInRingError(f"{x!r} is not in the domain on {self.ring.window}")
        return sum(k * v for k, v in zip(coeffs, self.row_values)) % 8

    def value_by_provenance(self, x: FiniteVector) -> int:
        """f(x) through the provenance expression of x."""
        expr = self.ring.provenance(x)
        if expr is None:
            raise NotInRingError(f"{x!r} is not in the domain on {self.ring.window}")
        return evaluate_z8(expr, self.images)

    def is_zero(self) -> bool:
        return not any(self.generator_images)

    def to_json(self) -> Dict[str, int]:
        return self.images


def backtracking_order(ring: GeneratedRing) -> List[int]:
    """Generator positions in search order: e-bars, then abar0, bbar, then D2."""
    names = [name for name, _ in ring.generators]

    def rank(pos: int) -> Tuple[int, int]:
        name = names[pos]
        if name.startswith("e["):
            return (0, pos)
        if name == "abar0":
            return (1, pos)
        if name == "bbar":
            return (2, pos)
        if name.startswith("d2"):
            return (4, pos)
        return (3, pos)

    return sorted(range(len(names)), key=rank)


def _extend(span: Z4Span[int], vectors: Sequence[FiniteVector], values: Sequence[int],
            order: Sequence[int], t: int, value: int) -> bool:
    """Insert generator order[t] with `value` and its products with earlier ones."""
    g = vectors[order[t]]
    try:
        span.insert(g.z4_vector(), value)
        for s in range(t + 1):
            other = vectors[order[s]]
            other_value = value if s == t else values[order[s]]
            product = g * other
            if not product.is_zero():
                span.insert(product.z4_vector(), z8_mul(value, other_value))
    except Inconsistent:
        return False
    return True


@dataclass(frozen=True)
class _Subtree:
    vectors: Tuple[FiniteVector, ...]
    order: Tuple[int, ...]
    basis: Tuple[Tuple[Tuple[int, ...], Expr], ...]
    names: Tuple[str, ...]
    width: int
    first_value: int
    budget: int


def _search_subtree(task: _Subtree) -> Tuple[List[Tuple[int, ...]], int]:
    """All complete assignments below a fixed image of the first generator."""
    results: List[Tuple[int, ...]] = []
    values = [0] * len(task.vectors)
    nodes = 0

    def leaf_consistent(span: Z4Span[int]) -> bool:
        env = dict(zip(task.names, values))
        for vector, expr in task.basis:
            if span.payload_of(vector) != evaluate_z8(expr, env):
                return False
        return True

    def walk(t: int, span: Z4Span[int]) -> None:
        nonlocal nodes
        if t == len(task.order):
            if not leaf_consistent(span):
                raise VerificationFailure("backtracking_leaf", tuple(values))
            results.append(tuple(values))
            return
        candidates = (task.first_value,) if t == 0 else TWO_Z8
        for value in candidates:
            nodes += 1
            if nodes > task.budget:
                raise BudgetExceeded(f"Homomorphism search passed {task.budget} nodes", size=len(results), frontier=t)
            child = span.copy()
            values[task.order[t]] = value
            if _extend(child, task.vectors, values, task.order, t, value):
                walk(t + 1, child)
        values[task.order[t]] = 0

    if task.order:
        walk(0, valued_span(task.width))
    else:
        results.append(())
    return results, nodes


def enumerate_homs(ring: GeneratedRing, budget: int = DEFAULT_BUDGET, workers: int = 1) -> List[Hom]:
    """All homomorphisms into Z8, by backtracking with propagation.

    Listed in lexicographic order of the generator image tuple.
    """
    order = tuple(backtracking_order(ring))
    vectors = tuple(v for _, v in ring.generators)
    basis = tuple((tuple(row.vector), expr) for row, (_, expr) in zip(ring.span.rows(), ring.basis))
    names = tuple(name for name, _ in ring.generators)
    width = 3 * ring.window.size
    firsts = TWO_Z8 if order else (0,)
    tasks = [_Subtree(vectors, order, basis, names, width, v, budget) for v in firsts]
    outcomes = parallel_map(_search_subtree, tasks, workers)
    found = sorted(images for chunk, _ in outcomes for images in chunk)
    nodes = sum(n for _, n in outcomes)
    logger.info(f"Backtracking found {len(found)} homomorphisms on {ring.window} ({nodes} nodes)")
    return [Hom.from_images(ring, images) for images in found]


def enumerate_homs_additive(ring: GeneratedRing, budget: int = DEFAULT_BUDGET) -> List[Hom]:
    """All homomorphisms into Z8, by filtering additive maps on the Howell basis."""
    rows = ring.span.rows()
    pivots = sorted(ring.span.pivots)
    width = ring.span.width

    # relations: an entry-2 pivot row doubles to a combination of later rows
    relations: List[Optional[List[int]]] = []
    for col, row in zip(pivots, rows):
        if row.vector[col] == 2:
            relations.append(ring.span.reduce([(2 * x) % 4 for x in row.vector]))
        else:
            relations.append(None)

    basis_vectors = [FiniteVector.from_z4_vector(ring.window, row.vector) for row in rows]
    products = []
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            coeffs = ring.span.reduce((basis_vectors[i] * basis_vectors[j]).z4_vector())
            if coeffs is None:
                raise NotInRingError(f"Basis product {i}*{j} left the ring on {ring.window}")
            products.append((i, j, coeffs))

    generator_coeffs = []
    for name, vector in ring.generators:
        coeffs = ring.span.reduce(vector.z4_vector())
        if coeffs is None:
            raise NotInRingError(f"Generator {name} is not in its own ring")
        generator_coeffs.append(coeffs)

    values = [0] * len(rows)
    found: List[Tuple[int, ...]] = []
    nodes = 0

    def walk(i: int) -> None:
        nonlocal nodes
        if i < 0:
            for a, b, coeffs in products:
                if sum(k * v for k, v in zip(coeffs, values)) % 8 != z8_mul(values[a], values[b]):
                    return
            found.append(tuple(
                sum(k * v for k, v in zip(coeffs, values)) % 8 for coeffs in generator_coeffs
            ))
            return
        relation = relations[i]
        for value in TWO_Z8:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"Additive search passed {budget} nodes", size=len(found), frontier=i)
            if relation is not None and (2 * value) % 8 != sum(k * v for k, v in zip(relation, values)) % 8:
                continue
            values[i] = value
            walk(i - 1)
        values[i] = 0

    walk(len(rows) - 1)
    if len(set(found)) != len(found):
        raise VerificationFailure("additive_distinct_images", len(found) - len(set(found)))
    logger.info(f"Additive-basis method found {len(found)} homomorphisms on {ring.window} (width {width})")
    return [Hom.from_images(ring, images) for images in sorted(found)]


def projection_hom(ring: GeneratedRing, flat_coordinate: int) -> Hom:
    """x -> flatten(x)[flat_coordinate]."""
    width = 3 * ring.window.size
    if not 0 <= flat_coordinate < width:
        raise ValueError(f"Flat coordinate {flat_coordinate} is outside 0..{width - 1} for window {ring.window}")
    images = tuple(vector.flatten()[flat_coordinate] for _, vector in ring.generators)
    return Hom.from_images(ring, images)


def flat_coordinate(ring: GeneratedRing, block: int, component: int) -> int:
    """Flattened position of component 0..2 of the block at index `block`."""
    if block not in ring.window or not 0 <= component < 3:
        raise ValueError(f"Block {block} component {component} is outside window {ring.window}")
    return 3 * (block - ring.window.lo) + component


def middle_projection(ring: GeneratedRing, block: int) -> Hom:
    return projection_hom(ring, flat_coordinate(ring, block, 1))


def _pair_failure(f: Hom, x: FiniteVector, y: FiniteVector) -> Optional[Dict[str, object]]:
    fx, fy = f.value(x), f.value(y)
    if (4 * fx) % 8:
        return {"check": "image_in_2Z8", "images": f.images, "x": x.flatten()}
    if f.value(x + y) != (fx + fy) % 8:
        return {"check": "additive", "images": f.images, "x": x.flatten(), "y": y.flatten()}
    if f.value(x * y) != z8_mul(fx, fy):
        return {"check": "multiplicative", "images": f.images, "x": x.flatten(), "y": y.flatten()}
    return None


def verify_hom(f: Hom, rng, samples: int = 200) -> Optional[Dict[str, object]]:
    """Check that f is a ring homomorphism into 2Z8.

    The check on every pair of basis rows is exact for any domain size: f is
    defined through the basis expansion, the only relations among Howell rows
    are 2 r = (reduction of 2 r) and 4 r = 0, and products are bilinear in the
    expansion; f must also match the given image on every generator.
    `samples` random element pairs and provenance evaluation are
    checked on top.  Returns a counterexample or None.
    """
    ring = f.ring
    if f.value(FiniteVector.zero(ring.window)) != 0:
        return {"check": "zero", "images": f.images}
    for name, g in ring.generators:
        if f.value(g) != f.image_of(name):
            return {"check": "generator_image", "images": f.images, "generator": name}
    basis = ring.basis
    for i, (x, expr) in enumerate(basis):
        if evaluate_z8(expr, f.images) != f.value(x):
            return {"check": "provenance", "images": f.images, "x": x.flatten()}
        for y, _ in basis[i:]:
            failure = _pair_failure(f, x, y)
            if failure is not None:
                return failure
    for _ in range(samples):
        x, y = ring.random_element(rng), ring.random_element(rng)
        failure = _pair_failure(f, x, y)
        if failure is None and f.value_by_provenance(x) != f.value(x):
            failure = {"check": "provenance", "images": f.images, "x": x.flatten()}
        if failure is not None:
            return failure
    return None
