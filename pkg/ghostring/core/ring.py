"""
Exact arithmetic in Z8 and in the subring R of Z8^3 generated by
a = (0, 2, 2) and b = (2, 2, 0).

Every element of R is alpha*a + beta*b + gamma*ab with alpha, beta taken
mod 4 and gamma mod 2, so R has 32 elements.  The triple is the stored
value; the (alpha, beta, gamma) coordinates come from a lookup table.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .errors import NotInRingError, VerificationFailure

logger = logging.getLogger(__name__)

MODULUS = 8

Z8 = int
Triple = Tuple[int, int, int]
Coords = Tuple[int, int, int]

# 8x8 operation tables; plain lists are faster to index than arrays
_Z8_ADD: List[List[int]] = (np.add.outer(np.arange(MODULUS), np.arange(MODULUS)) % MODULUS).tolist()
_Z8_MUL: List[List[int]] = (np.multiply.outer(np.arange(MODULUS), np.arange(MODULUS)) % MODULUS).tolist()
_Z8_NEG: List[int] = ((-np.arange(MODULUS)) % MODULUS).tolist()

TWO_Z8: Tuple[int, ...] = (0, 2, 4, 6)


def z8(value: int) -> Z8:
    """Reduce an integer to a Z8 residue."""
    return value % MODULUS


def z8_add(x: Z8, y: Z8) -> Z8:
    return _Z8_ADD[x % MODULUS][y % MODULUS]


def z8_mul(x: Z8, y: Z8) -> Z8:
    return _Z8_MUL[x % MODULUS][y % MODULUS]


def z8_neg(x: Z8) -> Z8:
    return _Z8_NEG[x % MODULUS]


def triple_add(x: Triple, y: Triple) -> Triple:
    return (_Z8_ADD[x[0]][y[0]], _Z8_ADD[x[1]][y[1]], _Z8_ADD[x[2]][y[2]])


def triple_mul(x: Triple, y: Triple) -> Triple:
    return (_Z8_MUL[x[0]][y[0]], _Z8_MUL[x[1]][y[1]], _Z8_MUL[x[2]][y[2]])


def triple_scale(n: int, x: Triple) -> Triple:
    return ((n * x[0]) % MODULUS, (n * x[1]) % MODULUS, (n * x[2]) % MODULUS)


A_TRIPLE: Triple = (0, 2, 2)
B_TRIPLE: Triple = (2, 2, 0)


@dataclass(frozen=True)
class RElem:
    """An element of R, stored as its triple in Z8^3."""
    triple: Triple
    code: int = field(compare=False, repr=False, default=-1)

    @property
    def coords(self) -> Coords:
        return _COORDS[self.code]

    def is_zero(self) -> bool:
        return self.code == 0

    def __add__(self, other: 'RElem') -> 'RElem':
        return ELEMENTS[ADD_TABLE[self.code][other.code]]

    def __sub__(self, other: 'RElem') -> 'RElem':
        return ELEMENTS[ADD_TABLE[self.code][NEG_TABLE[other.code]]]

    def __mul__(self, other: 'RElem') -> 'RElem':
        return ELEMENTS[MUL_TABLE[self.code][other.code]]

    def __neg__(self) -> 'RElem':
        return ELEMENTS[NEG_TABLE[self.code]]

    def scaled(self, n: int) -> 'RElem':
        return ELEMENTS[SCALE_TABLE[n % 4][self.code]]

    def __repr__(self) -> str:
        return f"RElem{self.triple}"


def _encode(coords: Coords) -> int:
    alpha, beta, gamma = coords
    return alpha | (beta << 2) | (gamma << 4)


def _build_elements() -> Tuple[List[RElem], List[Coords], Dict[Triple, int]]:
    ab = triple_mul(A_TRIPLE, B_TRIPLE)
    elements: List[RElem] = [None] * 32  # type: ignore[list-item]
    coords_table: List[Coords] = [None] * 32  # type: ignore[list-item]
    by_triple: Dict[Triple, int] = {}
    for alpha, beta, gamma in itertools.product(range(4), range(4), range(2)):
        triple = triple_add(
            triple_add(triple_scale(alpha, A_TRIPLE), triple_scale(beta, B_TRIPLE)),
            triple_scale(gamma, ab),
        )
        code = _encode((alpha, beta, gamma))
        if triple in by_triple:
            raise RuntimeError(f"Coordinate map is not injective at {triple}")
        elements[code] = RElem(triple, code)
        coords_table[code] = (alpha, beta, gamma)
        by_triple[triple] = code
    return elements, coords_table, by_triple


ELEMENTS, _COORDS, _CODE_OF_TRIPLE = _build_elements()


def _table(op) -> List[List[int]]:
    return [[_CODE_OF_TRIPLE[op(x.triple, y.triple)] for y in ELEMENTS] for x in ELEMENTS]


ADD_TABLE: List[List[int]] = _table(triple_add)
MUL_TABLE: List[List[int]] = _table(triple_mul)
NEG_TABLE: List[int] = [_CODE_OF_TRIPLE[triple_scale(-1, x.triple)] for x in ELEMENTS]
SCALE_TABLE: List[List[int]] = [
    [_CODE_OF_TRIPLE[triple_scale(n, x.triple)] for x in ELEMENTS] for n in range(4)
]


def r_from_triple(triple: Triple) -> RElem:
    """Look up the element of R with the given triple."""
    key = tuple(c % MODULUS for c in triple)
    code = _CODE_OF_TRIPLE.get(key)  # type: ignore[arg-type]
    if code is None:
        raise NotInRingError(f"Triple {tuple(triple)} does not lie in R")
    return ELEMENTS[code]


def r_from_coords(alpha: int, beta: int, gamma: int) -> RElem:
    return ELEMENTS[_encode((alpha % 4, beta % 4, gamma % 2))]


def r_to_coords(x) -> Coords:
    """Canonical (alpha, beta, gamma) of an RElem or a raw triple."""
    if isinstance(x, RElem):
        return x.coords
    return r_from_triple(x).coords


def r_add(x: RElem, y: RElem) -> RElem:
    return x + y


def r_mul(x: RElem, y: RElem) -> RElem:
    return x * y


def r_neg(x: RElem) -> RElem:
    return -x


ZERO = ELEMENTS[0]
A = r_from_triple(A_TRIPLE)
B = r_from_triple(B_TRIPLE)
AB = A * B
A_SQ = A * A
B_SQ = B * B

# The span of {a^2, b^2, ab}: every coordinate of a pairwise generator product
SQUARE_SPAN: Tuple[RElem, ...] = tuple(
    r_from_coords(alpha, beta, gamma)
    for alpha, beta, gamma in itertools.product((0, 2), (0, 2), (0, 1))
)


def ab_component(x: RElem) -> int:
    """The ab-coefficient of an element of the square span (0 or 1)."""
    alpha, beta, gamma = x.coords
    if alpha % 2 or beta % 2:
        raise NotInRingError(f"{x!r} is outside the span of a^2, b^2, ab")
    return gamma


def annihilator_of_two_z8() -> Tuple[int, ...]:
    """Elements of Z8 killing every element of 2Z8."""
    return tuple(x for x in range(MODULUS) if all(z8_mul(x, y) == 0 for y in TWO_Z8))


def verify_ring_identities() -> Dict[str, object]:
    """Exhaustively check the identities of R used by the construction.

    Raises VerificationFailure with the first counterexample found.
    """
    checks: Dict[str, object] = {}

    if len(set(x.triple for x in ELEMENTS)) != 32:
        raise VerificationFailure("order_32", len(ELEMENTS))
    checks["order_32"] = True

    for x in ELEMENTS:
        if x * x != r_from_triple(triple_scale(2, x.triple)):
            raise VerificationFailure("square_is_double", x)
        if any(triple_scale(4, x.triple)):
            raise VerificationFailure("four_kills", x)
        if any(c % 2 for c in x.triple):
            raise VerificationFailure("even_triples", x)
    checks["square_is_double"] = True
    checks["four_kills"] = True

    for x, y in itertools.product(ELEMENTS, repeat=2):
        if x * y != y * x:
            raise VerificationFailure("commutative", (x, y))
    checks["commutative"] = True

    for x, y, z in itertools.product(ELEMENTS, repeat=3):
        if not (x * y * z).is_zero():
            raise VerificationFailure("cube_zero", (x, y, z))
    checks["cube_zero"] = True

    ann = annihilator_of_two_z8()
    if ann != (0, 4):
        raise VerificationFailure("annihilator_of_2Z8", ann)
    checks["annihilator_of_2Z8"] = list(ann)

    for s in (A_SQ, B_SQ, A_SQ + B_SQ):
        for x in ELEMENTS:
            if not (s * x).is_zero():
                raise VerificationFailure("squares_annihilate", (s, x))
    checks["squares_annihilate"] = True

    for code in range(32):
        if r_to_coords(r_from_coords(*_COORDS[code])) != _COORDS[code]:
            raise VerificationFailure("coords_round_trip", _COORDS[code])
    checks["coords_round_trip"] = True

    logger.info("All ring identities hold over the 32 elements of R")
    return checks
