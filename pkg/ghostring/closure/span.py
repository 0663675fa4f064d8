"""
Echelon (Howell) form for subgroups of Z4^m with a payload carried along.

Elements of R^W are encoded in Z4^(3n) as (alpha, beta, 2*gamma) per
coordinate, so additive subgroups of R^W are subgroups of Z4^m.  Each row
carries a payload that is transformed together with the vector:

  * a provenance combination (which generators and products it came from), or
  * a Z8 value (a candidate homomorphism image).

Pivot rows have entry 1 or 2 in their pivot column.  For an entry-2 pivot the
double of the row is inserted as well, which is the Howell condition: with it,
greedy reduction decides membership and every element has a unique
expansion in the pivot rows.
"""

from dataclasses import dataclass
from typing import Any, Dict, Generic, Iterator, List, Optional, Sequence, Tuple, TypeVar

from ..core.expressions import Combination, combine

P = TypeVar("P")


class PayloadOps(Generic[P]):
    """How payloads combine under row operations."""

    def zero(self) -> P:
        raise NotImplementedError

    def add_scaled(self, left: P, right: P, k: int) -> P:
        """left + k * right."""
        raise NotImplementedError

    def is_zero(self, payload: P) -> bool:
        raise NotImplementedError


class ProvenanceOps(PayloadOps[Combination]):
    def zero(self) -> Combination:
        return ()

    def add_scaled(self, left: Combination, right: Combination, k: int) -> Combination:
        if k % 4 == 0:
            return left
        return combine(left, right, k)

    def is_zero(self, payload: Combination) -> bool:
        return not payload


class Z8ValueOps(PayloadOps[int]):
    def zero(self) -> int:
        return 0

    def add_scaled(self, left: int, right: int, k: int) -> int:
        return (left + k * right) % 8

    def is_zero(self, payload: int) -> bool:
        return payload % 8 == 0


PROVENANCE = ProvenanceOps()
Z8_VALUES = Z8ValueOps()


@dataclass
class SpanRow(Generic[P]):
    vector: List[int]
    payload: P


def _axpy(v: List[int], w: List[int], k: int) -> List[int]:
    """v + k * w over Z4."""
    return [(x + k * y) % 4 for x, y in zip(v, w)]


class Inconsistent(Exception):
    """A payload-carrying relation reduced to the zero vector with nonzero payload."""

    def __init__(self, payload: Any):
        super().__init__(f"Inconsistent payload {payload!r}")
        self.payload = payload


class Z4Span(Generic[P]):
    """An additive subgroup of Z4^width kept in Howell form."""

    def __init__(self, width: int, ops: PayloadOps[P], strict: bool = False):
        self.width = width
        self.ops = ops
        # strict: a relation with nonzero payload raises Inconsistent
        self.strict = strict
        self.pivots: Dict[int, SpanRow[P]] = {}

    def copy(self) -> 'Z4Span[P]':
        clone: Z4Span[P] = Z4Span(self.width, self.ops, self.strict)
        clone.pivots = {c: SpanRow(list(r.vector), r.payload) for c, r in self.pivots.items()}
        return clone

    def rows(self) -> List[SpanRow[P]]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    @property
    def size(self) -> int:
        """Number of elements of the subgroup."""
        size = 1
        for c, row in self.pivots.items():
            size *= 4 if row.vector[c] == 1 else 2
        return size

    def orders(self) -> List[int]:
        """Coefficient range of each pivot row, in pivot-column order."""
        return [4 if self.pivots[c].vector[c] == 1 else 2 for c in sorted(self.pivots)]

    def _reduce(self, vector: List[int], payload: P) -> Tuple[List[int], P, int]:
        """Reduce until a column is reached that no pivot can clear.

        Returns the remainder, its payload and the blocking column (-1 when the
        remainder is zero).
        """
        ops = self.ops
        col = 0
        while col < self.width:
            x = vector[col]
            if not x:
                col += 1
                continue
            row = self.pivots.get(col)
            if row is None:
                return vector, payload, col
            e = row.vector[col]
            if e == 1:
                vector = _axpy(vector, row.vector, -x)
                payload = ops.add_scaled(payload, row.payload, -x)
            elif x == 2:
                vector = _axpy(vector, row.vector, -1)
                payload = ops.add_scaled(payload, row.payload, -1)
            else:
                return vector, payload, col
            col += 1
        return vector, payload, -1

    def insert(self, vector: Sequence[int], payload: P) -> bool:
        """Add a vector to the subgroup.  Returns True if the subgroup grew."""
        grew = self._insert(vector, payload)
        if grew:
            self.restore_howell()
        return grew

    def _insert(self, vector: Sequence[int], payload: P) -> bool:
        grew = False
        pending: List[Tuple[List[int], P]] = [([x % 4 for x in vector], payload)]
        while pending:
            v, p = pending.pop()
            v, p, col = self._reduce(v, p)
            if col < 0:
                if self.strict and not self.ops.is_zero(p):
                    raise Inconsistent(p)
                continue
            grew = True
            e = v[col]
            if e in (1, 3):
                # units of Z4 are their own inverses
                v = [(x * e) % 4 for x in v]
                p = self.ops.add_scaled(self.ops.zero(), p, e)
            new_row = SpanRow(v, p)
            old = self.pivots.get(col)
            self.pivots[col] = new_row
            if old is not None:
                # an entry-2 pivot displaced by a unit: old - 2*new vanishes at col
                pending.append((_axpy(old.vector, v, -2), self.ops.add_scaled(old.payload, p, -2)))
            if v[col] == 2:
                pending.append(([(2 * x) % 4 for x in v], self.ops.add_scaled(self.ops.zero(), p, 2)))
        return grew

    def reduce(self, vector: Sequence[int]) -> Optional[List[int]]:
        """Expansion coefficients of `vector` in the pivot rows, or None.

        Coefficients are listed in pivot-column order.
        """
        v = [x % 4 for x in vector]
        coeffs: Dict[int, int] = {}
        col = 0
        while col < self.width:
            x = v[col]
            if not x:
                col += 1
                continue
            row = self.pivots.get(col)
            if row is None:
                return None
            e = row.vector[col]
            if e == 1:
                k = x
            elif x == 2:
                k = 1
            else:
                return None
            v = _axpy(v, row.vector, -k)
            coeffs[col] = k
            col += 1
        return [coeffs.get(c, 0) for c in sorted(self.pivots)]

    def contains(self, vector: Sequence[int]) -> bool:
        return self.reduce(vector) is not None

    def payload_of(self, vector: Sequence[int]) -> Optional[P]:
        """The payload the span assigns to `vector`, or None if not a member."""
        coeffs = self.reduce(vector)
        if coeffs is None:
            return None
        payload = self.ops.zero()
        for k, row in zip(coeffs, self.rows()):
            if k:
                payload = self.ops.add_scaled(payload, row.payload, k)
        return payload

    def restore_howell(self) -> None:
        """Re-insert doubles of entry-2 pivots until all of them reduce to zero."""
        changed = True
        while changed:
            changed = False
            for col, row in list(self.pivots.items()):
                if row.vector[col] != 2:
                    continue
                double = [(2 * x) % 4 for x in row.vector]
                payload = self.ops.add_scaled(self.ops.zero(), row.payload, 2)
                if self._insert(double, payload):
                    changed = True

    def elements(self) -> Iterator[Tuple[List[int], List[int]]]:
        """Every (coefficients, vector) pair of the subgroup."""
        rows = self.rows()
        orders = self.orders()

        def walk(i: int, acc: List[int], coeffs: List[int]):
            if i == len(rows):
                yield list(coeffs), acc
                return
            for k in range(orders[i]):
                coeffs.append(k)
                yield from walk(i + 1, _axpy(acc, rows[i].vector, k) if k else acc, coeffs)
                coeffs.pop()

        yield from walk(0, [0] * self.width, [])


def provenance_span(width: int) -> Z4Span[Combination]:
    return Z4Span(width, PROVENANCE)


def valued_span(width: int) -> Z4Span[int]:
    return Z4Span(width, Z8_VALUES, strict=True)
