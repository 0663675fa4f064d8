"""
Quadratic polynomials over F2 and their solution sets.

Points of F2^n are integers in [0, 2^n); bit i is coordinate x_i.  Monomials
are ordered: the constant, x_0 .. x_{n-1}, then x_i x_j for i < j in
lexicographic order.  Polynomials and point sets are Python ints used as
bit vectors, and linear systems are solved on bit-packed rows.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple


def monomial_count(n: int) -> int:
    return 1 + n + n * (n - 1) // 2


@lru_cache(maxsize=None)
def monomial_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def monomial_rows(n: int) -> Tuple[int, ...]:
    """For each point v, the bit vector of monomials equal to 1 at v."""
    pairs = monomial_pairs(n)
    rows = []
    for v in range(1 << n):
        row = 1
        for i in range(n):
            if (v >> i) & 1:
                row |= 1 << (1 + i)
        for k, (i, j) in enumerate(pairs):
            if (v >> i) & 1 and (v >> j) & 1:
                row |= 1 << (1 + n + k)
        rows.append(row)
    return tuple(rows)


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class QuadPoly:
    """A polynomial of degree at most 2 over F2 in n variables."""
    n: int
    coeffs: int = 0

    def __post_init__(self):
        if self.coeffs < 0 or self.coeffs >> monomial_count(self.n):
            raise ValueError(f"Coefficient vector {self.coeffs:#x} too wide for n={self.n}")

    @classmethod
    def from_terms(cls, n: int, constant: int = 0, linear: Sequence[int] = (),
                   quadratic: Sequence[Tuple[int, int]] = ()) -> 'QuadPoly':
        """Build from a constant bit, linear variable indices and (i, j) products."""
        pairs = monomial_pairs(n)
        coeffs = constant & 1
        for i in linear:
            coeffs ^= 1 << (1 + i)
        for i, j in quadratic:
            i, j = min(i, j), max(i, j)
            coeffs ^= 1 << (1 + n + pairs.index((i, j)))
        return cls(n, coeffs)

    def coefficient_bits(self) -> List[int]:
        return [(self.coeffs >> k) & 1 for k in range(monomial_count(self.n))]

    def __str__(self) -> str:
        names = ["1"] + [f"x{i}" for i in range(self.n)] + [f"x{i}x{j}" for i, j in monomial_pairs(self.n)]
        terms = [name for k, name in enumerate(names) if (self.coeffs >> k) & 1]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class PointSet:
    """A subset of F2^n as a mask with bit v set iff v is in the set."""
    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> (1 << self.n):
            raise ValueError(f"Mask {self.mask:#x} too wide for n={self.n}")

    @classmethod
    def full(cls, n: int) -> 'PointSet':
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_points(cls, n: int, points: Sequence[int]) -> 'PointSet':
        mask = 0
        for v in points:
            mask |= 1 << v
        return cls(n, mask)

    def __contains__(self, v: int) -> bool:
        return bool((self.mask >> v) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def points(self) -> Iterator[int]:
        for v in range(1 << self.n):
            if (self.mask >> v) & 1:
                yield v

    def complement(self) -> 'PointSet':
        return PointSet(self.n, PointSet.full(self.n).mask ^ self.mask)

    def hex(self) -> str:
        return f"{self.mask:#0{2 + (1 << self.n) // 4 if self.n >= 2 else 3}x}"


def eval_poly(q: QuadPoly, v: int) -> int:
    return _parity(q.coeffs & monomial_rows(q.n)[v])


def solution_set(q: QuadPoly) -> PointSet:
    mask = 0
    for v, row in enumerate(monomial_rows(q.n)):
        if not _parity(q.coeffs & row):
            mask |= 1 << v
    return PointSet(q.n, mask)


def solve_gf2(rows: Sequence[int], width: int) -> Optional[int]:
    """Solve a linear system over F2.

    Each row holds its coefficients in bits 0 .. width-1 and the right-hand
    side in bit `width`.  Returns one solution (free variables 0) as a bit
    vector, or None if the system is inconsistent.
    """
    coeff_mask = (1 << width) - 1
    pivots = {}
    for row in rows:
        while row & coeff_mask:
            low = (row & -row).bit_length() - 1
            pivot = pivots.get(low)
            if pivot is None:
                pivots[low] = row
                break
            row ^= pivot
        else:
            if row >> width:
                return None
    solution = 0
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        rest = row & coeff_mask & ~(1 << col)
        bit = ((row >> width) & 1) ^ _parity(rest & solution)
        if bit:
            solution |= 1 << col
    return solution


def has_Q(s: PointSet) -> Optional[QuadPoly]:
    """A quadratic whose solution set is exactly S, or None.

    Points of S give the equation q(v) = 0 and points outside give q(v) = 1.
    """
    width = monomial_count(s.n)
    rows = [row | ((0 if (s.mask >> v) & 1 else 1) << width) for v, row in enumerate(monomial_rows(s.n))]
    solution = solve_gf2(rows, width)
    if solution is None:
        return None
    return QuadPoly(s.n, solution)


def all_polynomials(n: int) -> Iterator[QuadPoly]:
    for coeffs in range(1 << monomial_count(n)):
        yield QuadPoly(n, coeffs)


def brute_force_q_sets(n: int) -> frozenset:
    """Masks of every quadratic solution set, by evaluating all polynomials."""
    return frozenset(solution_set(q).mask for q in all_polynomials(n))
