"""
Generated subrings of R^W on a finite window.

A subring is kept as an additive basis in Howell form (see span.py) that is
closed under products of basis rows.  Since products are bilinear this is
exactly the least subring containing the generators.  Elements are only
materialized on request and only below the element budget; membership and
witnesses never need them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import BudgetExceeded, VerificationFailure
from ..core.expressions import (
    Expr, Gen, Mul, ZERO_EXPR, Combination, combination, combination_to_expr, evaluate,
)
from ..core.ring import A_SQ, B_SQ
from ..core.vectors import (
    FiniteVector, Window, ebar_indices, gen_abar, gen_bbar, gen_ebar,
)
from .span import Z4Span, provenance_span

logger = logging.getLogger(__name__)

DEFAULT_CAP = 2_000_000

NamedVector = Tuple[str, FiniteVector]


@dataclass
class Membership:
    """Outcome of a membership query."""
    found: bool
    witness: Optional[Expr] = None

    def __bool__(self) -> bool:
        return self.found


@dataclass
class GeneratedRing:
    """The least subring of R^W containing the named generators."""
    window: Window
    generators: Tuple[NamedVector, ...]
    span: Z4Span[Combination]
    cap: int = DEFAULT_CAP
    passes: int = 0
    _elements: Optional[List[FiniteVector]] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.span.size

    @property
    def basis(self) -> List[Tuple[FiniteVector, Expr]]:
        """Additive basis rows with their provenance expressions."""
        return [
            (FiniteVector.from_z4_vector(self.window, row.vector), combination_to_expr(row.payload))
            for row in self.span.rows()
        ]

    @property
    def environment(self) -> Dict[str, FiniteVector]:
        return dict(self.generators)

    def generator(self, name: str) -> FiniteVector:
        return self.environment[name]

    def elements(self) -> List[FiniteVector]:
        """Every element, in basis-coefficient order.

        Raises BudgetExceeded when the ring is larger than the cap.
        """
        if self._elements is None:
            if self.size > self.cap:
                raise BudgetExceeded(
                    f"Ring on window {self.window} has {self.size} elements, cap is {self.cap}",
                    size=self.size,
                    frontier=len(self.span.pivots),
                )
            self._elements = [
                FiniteVector.from_z4_vector(self.window, vector)
                for _, vector in self.span.elements()
            ]
        return self._elements

    def random_element(self, rng) -> FiniteVector:
        """A uniformly drawn element, from random basis coefficients."""
        total = [0] * self.span.width
        for row, order in zip(self.span.rows(), self.span.orders()):
            k = int(rng.integers(0, order))
            if k:
                total = [(x + k * y) % 4 for x, y in zip(total, row.vector)]
        return FiniteVector.from_z4_vector(self.window, total)

    def __contains__(self, target: FiniteVector) -> bool:
        return self.span.contains(target.z4_vector())

    def provenance(self, target: FiniteVector) -> Optional[Expr]:
        """Expression over generator names evaluating to `target`, or None."""
        payload = self.span.payload_of(target.z4_vector())
        if payload is None:
            return None
        return combination_to_expr(payload)

    def evaluate(self, expr: Expr) -> FiniteVector:
        return evaluate(expr, self.environment, FiniteVector.zero(self.window))

    def verify_witness(self, target: FiniteVector, expr: Expr) -> bool:
        return self.evaluate(expr) == target

    def same_as(self, other: 'GeneratedRing') -> bool:
        """True when both rings have the same elements."""
        if self.window != other.window or self.size != other.size:
            return False
        return all(vector in other for vector, _ in self.basis)


def close(
    generators: Sequence[NamedVector],
    cap: int = DEFAULT_CAP,
    window: Optional[Window] = None,
    materialize: bool = False,
) -> GeneratedRing:
    """Least subring containing the generators, with provenance.

    Generators are inserted in the given order, then products of basis rows
    are inserted pass by pass (pairs in basis order) until a pass adds
    nothing.  The span itself is never capped: `cap` bounds only element
    materialization.  With `materialize` the element list is built here, so
    a ring larger than `cap` raises BudgetExceeded (with size and frontier)
    from this call; otherwise it raises from the first `elements()`.
    """
    if window is None:
        if not generators:
            raise ValueError("close() needs a window when there are no generators")
        window = generators[0][1].window
    for name, vector in generators:
        if vector.window != window:
            raise ValueError(f"Generator {name} lives on {vector.window}, expected {window}")

    span = provenance_span(3 * window.size)
    for name, vector in generators:
        span.insert(vector.z4_vector(), combination(((Gen(name), 1),)))

    passes = 0
    while True:
        passes += 1
        rows = [
            (FiniteVector.from_z4_vector(window, row.vector), combination_to_expr(row.payload))
            for row in span.rows()
        ]
        grew = False
        for i, (x, x_expr) in enumerate(rows):
            for y, y_expr in rows[i:]:
                product = x * y
                if product.is_zero():
                    continue
                if span.insert(product.z4_vector(), combination(((Mul(x_expr, y_expr), 1),))):
                    grew = True
        logger.debug(f"Closure pass {passes}: {len(span.pivots)} basis rows, size {span.size}")
        if not grew:
            break

    ring = GeneratedRing(window, tuple(generators), span, cap, passes)
    logger.info(
        f"Closed {len(generators)} generators on window {window}: "
        f"{ring.size} elements after {passes} passes"
    )
    if materialize:
        ring.elements()
    return ring


def contains(ring: GeneratedRing, target: FiniteVector, verify: bool = True) -> Membership:
    """Decide membership and return a witness expression when present."""
    if target.window != ring.window:
        raise ValueError(f"Target lives on {target.window}, ring on {ring.window}")
    if target.is_zero():
        return Membership(True, ZERO_EXPR)
    witness = ring.provenance(target)
    if witness is None:
        return Membership(False)
    if verify and not ring.verify_witness(target, witness):
        raise VerificationFailure("witness_soundness", {"target": target, "witness": str(witness)})
    return Membership(True, witness)


def d2_generators(window: Window) -> List[NamedVector]:
    """a^2 and b^2 at each coordinate of the window, zero elsewhere."""
    out: List[NamedVector] = []
    for j in window.indices():
        out.append((f"d2a[{j}]", FiniteVector.single(window, j, A_SQ)))
        out.append((f"d2b[{j}]", FiniteVector.single(window, j, B_SQ)))
    return out


def d_generators(window: Window) -> List[NamedVector]:
    """Restricted generators of D: b-bar, a-bar_0, every e-bar meeting the window, then D2."""
    gens: List[NamedVector] = [
        ("bbar", gen_bbar().restrict(window)),
        ("abar0", gen_abar(0).restrict(window)),
    ]
    gens.extend((f"e[{i}]", gen_ebar(i).restrict(window)) for i in ebar_indices(window))
    gens.extend(d2_generators(window))
    return gens


def build_D(window: Window, cap: int = DEFAULT_CAP) -> GeneratedRing:
    """The subring generated by the restrictions of the generators of D.

    This is the generated restriction; all claims about D on a window are
    stated for it.
    """
    return close(d_generators(window), cap=cap, window=window)


def project(vector: FiniteVector, window: Window) -> FiniteVector:
    """Coordinate projection onto a sub-window."""
    if window.lo < vector.window.lo or window.hi > vector.window.hi:
        raise ValueError(f"{window} is not inside {vector.window}")
    return FiniteVector(window, tuple(vector.at(i) for i in window.indices()))


def projection_consistent(outer: GeneratedRing, inner: GeneratedRing) -> bool:
    """Every element of `outer` projects into `inner`.

    Projection is a ring map, so checking the basis rows is enough.
    """
    return all(project(vector, inner.window) in inner for vector, _ in outer.basis)
