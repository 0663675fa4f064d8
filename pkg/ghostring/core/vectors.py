"""
Eventually constant Z-indexed vectors over R, their finite truncations,
and the named vectors of the construction (b-bar, a-bar_i, e-bar_i, the
ghost and the punctured ghosts).
"""

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .errors import NotInRingError, VerificationFailure
from .ring import A, AB, B, ELEMENTS, ZERO, RElem, Z8, r_from_coords, z8_mul

logger = logging.getLogger(__name__)

_WINDOW_PATTERN = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$")


@dataclass(frozen=True)
class Window:
    """An inclusive interval [lo, hi] of indices."""
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Window lower bound {self.lo} exceeds upper bound {self.hi}")

    @classmethod
    def parse(cls, text: str) -> 'Window':
        """Parse the command-line form 'A:B', e.g. '-2:2'."""
        match = _WINDOW_PATTERN.match(text)
        if not match:
            raise ValueError(f"Invalid window '{text}', expected A:B")
        return cls(int(match.group(1)), int(match.group(2)))

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, index: int) -> bool:
        return self.lo <= index <= self.hi

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class FiniteVector:
    """An element of R^W for a finite window W."""
    window: Window
    values: Tuple[RElem, ...]

    def __post_init__(self):
        if len(self.values) != self.window.size:
            raise ValueError(
                f"Vector length {len(self.values)} does not match window {self.window}"
            )

    @classmethod
    def zero(cls, window: Window) -> 'FiniteVector':
        return cls(window, (ZERO,) * window.size)

    @classmethod
    def single(cls, window: Window, index: int, value: RElem) -> 'FiniteVector':
        """The vector with `value` at `index` and zero elsewhere."""
        values = [ZERO] * window.size
        if index in window:
            values[index - window.lo] = value
        return cls(window, tuple(values))

    def at(self, index: int) -> RElem:
        return self.values[index - self.window.lo]

    def _check(self, other: 'FiniteVector') -> None:
        if other.window != self.window:
            raise ValueError(f"Window mismatch: {self.window} vs {other.window}")

    def __add__(self, other: 'FiniteVector') -> 'FiniteVector':
        self._check(other)
        return FiniteVector(self.window, tuple(x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other: 'FiniteVector') -> 'FiniteVector':
        self._check(other)
        return FiniteVector(self.window, tuple(x - y for x, y in zip(self.values, other.values)))

    def __mul__(self, other: 'FiniteVector') -> 'FiniteVector':
        self._check(other)
        return FiniteVector(self.window, tuple(x * y for x, y in zip(self.values, other.values)))

    def __neg__(self) -> 'FiniteVector':
        return FiniteVector(self.window, tuple(-x for x in self.values))

    def scaled(self, n: int) -> 'FiniteVector':
        return FiniteVector(self.window, tuple(x.scaled(n) for x in self.values))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.values)

    @property
    def key(self) -> int:
        """Fixed-width integer key, 5 bits per coordinate."""
        key = 0
        for shift, x in enumerate(self.values):
            key |= x.code << (5 * shift)
        return key

    @classmethod
    def from_key(cls, window: Window, key: int) -> 'FiniteVector':
        return cls(window, tuple(ELEMENTS[(key >> (5 * i)) & 31] for i in range(window.size)))

    def z4_vector(self) -> List[int]:
        """The image in Z4^(3n): (alpha, beta, 2*gamma) per coordinate."""
        out: List[int] = []
        for x in self.values:
            alpha, beta, gamma = x.coords
            out.extend((alpha, beta, 2 * gamma))
        return out

    @classmethod
    def from_z4_vector(cls, window: Window, vector: Sequence[int]) -> 'FiniteVector':
        values = []
        for i in range(window.size):
            alpha, beta, twice_gamma = vector[3 * i: 3 * i + 3]
            if twice_gamma % 2:
                raise NotInRingError(f"Odd ab-coordinate in {list(vector)}")
            values.append(r_from_coords(alpha, beta, twice_gamma // 2))
        return cls(window, tuple(values))

    def flatten(self) -> Tuple[Z8, ...]:
        return tuple(c for x in self.values for c in x.triple)

    def __repr__(self) -> str:
        return f"FiniteVector({self.window}, {[x.triple for x in self.values]})"


@dataclass(frozen=True)
class ECVector:
    """An eventually constant vector over R indexed by Z.

    `exceptions` lists, sorted by index, the finitely many coordinates that
    differ from the eventual value.
    """
    eventual: RElem
    exceptions: Tuple[Tuple[int, RElem], ...] = ()

    @classmethod
    def build(cls, eventual: RElem, values: Mapping[int, RElem]) -> 'ECVector':
        """Canonical constructor: drops entries equal to the eventual value."""
        return cls(
            eventual,
            tuple(sorted((i, v) for i, v in values.items() if v != eventual)),
        )

    @classmethod
    def constant(cls, value: RElem) -> 'ECVector':
        return cls(value, ())

    @classmethod
    def zero(cls) -> 'ECVector':
        return cls(ZERO, ())

    @classmethod
    def single(cls, index: int, value: RElem) -> 'ECVector':
        return cls.build(ZERO, {index: value})

    @property
    def exception_map(self) -> Dict[int, RElem]:
        return dict(self.exceptions)

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.exceptions)

    def at(self, index: int) -> RElem:
        for i, v in self.exceptions:
            if i == index:
                return v
        return self.eventual

    def values(self) -> Iterator[RElem]:
        """Every value taken: the eventual one and each exception."""
        yield self.eventual
        for _, v in self.exceptions:
            yield v

    def _combine(self, other: 'ECVector', op) -> 'ECVector':
        mine, theirs = self.exception_map, other.exception_map
        indices = set(mine) | set(theirs)
        return ECVector.build(
            op(self.eventual, other.eventual),
            {
                i: op(mine.get(i, self.eventual), theirs.get(i, other.eventual))
                for i in indices
            },
        )

    def __add__(self, other: 'ECVector') -> 'ECVector':
        return self._combine(other, RElem.__add__)

    def __sub__(self, other: 'ECVector') -> 'ECVector':
        return self._combine(other, RElem.__sub__)

    def __mul__(self, other: 'ECVector') -> 'ECVector':
        return self._combine(other, RElem.__mul__)

    def __neg__(self) -> 'ECVector':
        return ECVector.build(-self.eventual, {i: -v for i, v in self.exceptions})

    def scaled(self, n: int) -> 'ECVector':
        return ECVector.build(self.eventual.scaled(n), {i: v.scaled(n) for i, v in self.exceptions})

    def is_zero(self) -> bool:
        return self.eventual.is_zero() and not self.exceptions

    def restrict(self, window: Window) -> FiniteVector:
        return FiniteVector(window, tuple(self.at(i) for i in window.indices()))

    def flatten(self, window: Window) -> Tuple[Z8, ...]:
        return self.restrict(window).flatten()

    def to_json(self) -> Dict[str, object]:
        return {
            "eventual": list(self.eventual.coords),
            "exceptions": [[i, list(v.coords)] for i, v in self.exceptions],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> 'ECVector':
        eventual = r_from_coords(*data["eventual"])  # type: ignore[misc]
        return cls.build(
            eventual,
            {int(i): r_from_coords(*coords) for i, coords in data["exceptions"]},  # type: ignore[union-attr]
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v.triple}" for i, v in self.exceptions)
        return f"ECVector(eventual={self.eventual.triple}, {{{body}}})"


def ec_add(x: ECVector, y: ECVector) -> ECVector:
    return x + y


def ec_mul(x: ECVector, y: ECVector) -> ECVector:
    return x * y


def ec_neg(x: ECVector) -> ECVector:
    return -x


def ec_scale(n: int, x: ECVector) -> ECVector:
    return x.scaled(n)


def gen_bbar() -> ECVector:
    """The constant vector b."""
    return ECVector.constant(B)


def gen_abar(i: int) -> ECVector:
    """b at i, 0 at i-1 and i+1, a everywhere else."""
    return ECVector.build(A, {i: B, i - 1: ZERO, i + 1: ZERO})


def gen_ebar(i: int) -> ECVector:
    """abar_i - abar_{i-1}: a, -b, b, -a on i-2 .. i+1, zero elsewhere."""
    return ECVector.build(ZERO, {i - 2: A, i - 1: -B, i: B, i + 1: -A})


def ghost() -> ECVector:
    """The constant vector ab."""
    return ECVector.constant(AB)


def punctured_ghost(i: int) -> ECVector:
    """The constant vector ab with a zero at index i."""
    return ECVector.build(AB, {i: ZERO})


def ebar_indices(window: Window) -> range:
    """Indices i whose e-bar support [i-2, i+1] meets the window."""
    return range(window.lo - 1, window.hi + 3)


def gen_unital_variant() -> Tuple[Tuple[Z8, ...], Tuple[Z8, ...]]:
    """Generators (2,2,0,0) and (0,2,2,0) of the ring used with a unit.

    Both are checked against 2x = x^2 and 4x = 0 componentwise.
    """
    a_prime = (2, 2, 0, 0)
    b_prime = (0, 2, 2, 0)
    for vector in (a_prime, b_prime):
        squares = tuple(z8_mul(c, c) for c in vector)
        doubles = tuple((2 * c) % 8 for c in vector)
        if squares != doubles or any((4 * c) % 8 for c in vector):
            raise NotInRingError(f"{vector} violates 2x = x^2 or 4x = 0")
    return a_prime, b_prime


def sum_vectors(vectors: Iterable[ECVector]) -> ECVector:
    total = ECVector.zero()
    for v in vectors:
        total = total + v
    return total


_GENERATOR_NAME = re.compile(r"^(e|d2a|d2b)\[(-?\d+)\]$")


def generator_vector(name: str) -> ECVector:
    """The generator of D with the given name.

    Names are 'bbar', 'abar0', 'e[i]', and 'd2a[j]' / 'd2b[j]' for a^2 and
    b^2 at index j.
    """
    if name == "bbar":
        return gen_bbar()
    if name == "abar0":
        return gen_abar(0)
    match = _GENERATOR_NAME.match(name)
    if not match:
        raise ValueError(f"Unknown generator name '{name}'")
    kind, index = match.group(1), int(match.group(2))
    if kind == "e":
        return gen_ebar(index)
    return ECVector.single(index, A * A if kind == "d2a" else B * B)


def verify_vector_identities(span: int = 10) -> Dict[str, object]:
    """Identities among the generators for indices in [-span, span].

    Raises VerificationFailure with the first counterexample found.
    """
    indices = range(-span, span + 1)
    for i in indices:
        if gen_ebar(i) != gen_abar(i) - gen_abar(i - 1):
            raise VerificationFailure("ebar_is_abar_difference", i)
    for i, j in itertools.product(indices, repeat=2):
        if abs(i - j) > 3 and not (gen_ebar(i) * gen_ebar(j)).is_zero():
            raise VerificationFailure("distant_ebars_annihilate", (i, j))
    for i in indices:
        if gen_ebar(i) * gen_ebar(i + 2) != ECVector.build(ZERO, {i: AB, i + 1: AB}):
            raise VerificationFailure("adjacent_pair_product", i)
    net = gen_ebar(2) * (gen_ebar(2) + gen_ebar(-1) + gen_ebar(5) + gen_bbar())
    if net != ECVector.build(ZERO, {0: AB, 3: AB}):
        raise VerificationFailure("net_identity", net)
    for s in (A * A, B * B):
        for x in ELEMENTS:
            if not (s * x).is_zero():
                raise VerificationFailure("d2_annihilates", (s, x))
    a_prime, b_prime = gen_unital_variant()
    logger.info(f"Generator identities hold on [-{span}, {span}]")
    return {
        "ebar_is_abar_difference": True,
        "distant_ebars_annihilate": True,
        "adjacent_pair_product": True,
        "net_identity": True,
        "d2_annihilates": True,
        "unital_variant": [list(a_prime), list(b_prime)],
    }
