"""
Expression trees over named generators using +, - and *.

These are the provenance witnesses of generated-ring elements.  A tree is
evaluated in any structure supporting +, unary - and * (RElem, ECVector,
FiniteVector, or Z8 through `evaluate_z8`).
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Tuple, Union

from .ring import z8_add, z8_mul, z8_neg


class Expr:
    """Base class of expression nodes."""

    def to_json(self) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(Expr):
    def to_json(self) -> Any:
        return ["0"]

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Gen(Expr):
    name: str

    def to_json(self) -> Any:
        return ["gen", self.name]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def to_json(self) -> Any:
        return ["+", self.left.to_json(), self.right.to_json()]

    def __str__(self) -> str:
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def to_json(self) -> Any:
        return ["-", self.operand.to_json()]

    def __str__(self) -> str:
        return f"-{self.operand}"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def to_json(self) -> Any:
        return ["*", self.left.to_json(), self.right.to_json()]

    def __str__(self) -> str:
        return f"{self.left}*{self.right}"


ZERO_EXPR = Zero()


def expr_from_json(data: Any) -> Expr:
    tag = data[0]
    if tag == "0":
        return ZERO_EXPR
    if tag == "gen":
        return Gen(data[1])
    if tag == "+":
        return Add(expr_from_json(data[1]), expr_from_json(data[2]))
    if tag == "-":
        return Neg(expr_from_json(data[1]))
    if tag == "*":
        return Mul(expr_from_json(data[1]), expr_from_json(data[2]))
    raise ValueError(f"Unknown expression tag {tag!r}")


def evaluate(expr: Expr, env: Mapping[str, Any], zero: Any) -> Any:
    """Evaluate an expression with generators looked up in `env`."""
    cache: Dict[int, Any] = {}

    def walk(node: Expr) -> Any:
        hit = cache.get(id(node))
        if hit is not None:
            return hit
        if isinstance(node, Zero):
            value = zero
        elif isinstance(node, Gen):
            value = env[node.name]
        elif isinstance(node, Add):
            value = walk(node.left) + walk(node.right)
        elif isinstance(node, Neg):
            value = -walk(node.operand)
        elif isinstance(node, Mul):
            value = walk(node.left) * walk(node.right)
        else:
            raise TypeError(f"Not an expression node: {node!r}")
        cache[id(node)] = value
        return value

    return walk(expr)


def evaluate_z8(expr: Expr, images: Mapping[str, int]) -> int:
    """Evaluate an expression in Z8, e.g. under a homomorphism's generator images."""
    if isinstance(expr, Zero):
        return 0
    if isinstance(expr, Gen):
        return images[expr.name] % 8
    if isinstance(expr, Add):
        return z8_add(evaluate_z8(expr.left, images), evaluate_z8(expr.right, images))
    if isinstance(expr, Neg):
        return z8_neg(evaluate_z8(expr.operand, images))
    if isinstance(expr, Mul):
        return z8_mul(evaluate_z8(expr.left, images), evaluate_z8(expr.right, images))
    raise TypeError(f"Not an expression node: {expr!r}")


def generator_names(expr: Expr) -> List[str]:
    """Generator names used by an expression, in first-use order."""
    seen: Dict[str, None] = {}

    def walk(node: Expr) -> None:
        if isinstance(node, Gen):
            seen.setdefault(node.name, None)
        elif isinstance(node, (Add, Mul)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Neg):
            walk(node.operand)

    walk(expr)
    return list(seen)


# A Z4-linear combination of expression terms; coefficients live in 1..3
Combination = Tuple[Tuple[Expr, int], ...]


def combination(terms: Iterable[Tuple[Expr, int]]) -> Combination:
    """Collect like terms mod 4, keeping first-seen order."""
    acc: Dict[Expr, int] = {}
    for term, coeff in terms:
        acc[term] = (acc.get(term, 0) + coeff) % 4
    return tuple((t, c) for t, c in acc.items() if c)


def combine(left: Combination, right: Combination, k: int = 1) -> Combination:
    """left + k * right."""
    return combination(list(left) + [(t, c * k) for t, c in right])


def combination_to_expr(comb: Combination) -> Expr:
    """Spell out a combination with +, - only: 2x is x + x and 3x is -x."""
    expr: Union[Expr, None] = None
    for term, coeff in comb:
        if coeff == 1:
            piece: Expr = term
        elif coeff == 2:
            piece = Add(term, term)
        else:
            piece = Neg(term)
        expr = piece if expr is None else Add(expr, piece)
    return expr if expr is not None else ZERO_EXPR
