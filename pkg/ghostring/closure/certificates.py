"""
Membership certificates and their independent re-checker.

A certificate names a window, a target, an expression over generator names
and the flattened Z8 values of every generator used.  The checker rebuilds
each generator from its name and the window with plain mod-8 tuples, rejects
any certificate whose listed values differ, and evaluates the expression
componentwise.  It does not touch the ring, span or closure code.
"""

import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..core.expressions import Expr, expr_from_json, generator_names
from .subring import GeneratedRing

logger = logging.getLogger(__name__)

CERTIFICATE_SCHEMA = "ghostring/certificate@1"

Flat = Tuple[int, ...]

# coordinates of a, b and their squares inside Z8^3
_A: Flat = (0, 2, 2)
_B: Flat = (2, 2, 0)
_O: Flat = (0, 0, 0)
_INDEXED_NAME = re.compile(r"^(e|d2a|d2b)\[(-?\d+)\]$")


def _neg(t: Flat) -> Flat:
    return tuple((-c) % 8 for c in t)


def _square(t: Flat) -> Flat:
    return tuple((c * c) % 8 for c in t)


def _parse_window(text: str) -> Tuple[int, int]:
    lo, sep, hi = str(text).partition(":")
    if not sep:
        raise ValueError(f"Certificate window {text!r} is not of the form A:B")
    lo_i, hi_i = int(lo), int(hi)
    if lo_i > hi_i:
        raise ValueError(f"Certificate window {text!r} is empty")
    return lo_i, hi_i


def _generator_block(name: str, k: int) -> Optional[Flat]:
    """Value at index k of the named generator of D, or None for an unknown name."""
    if name == "bbar":
        return _B
    if name == "abar0":
        return {0: _B, -1: _O, 1: _O}.get(k, _A)
    match = _INDEXED_NAME.match(name)
    if not match:
        return None
    kind, i = match.group(1), int(match.group(2))
    if kind == "e":
        return {i - 2: _A, i - 1: _neg(_B), i: _B, i + 1: _neg(_A)}.get(k, _O)
    if k != i:
        return _O
    return _square(_A) if kind == "d2a" else _square(_B)


def expected_generator(name: str, window: str) -> Optional[Flat]:
    """Flattened values of a generator of D on a window, or None if the name is unknown."""
    lo, hi = _parse_window(window)
    flat: List[int] = []
    for k in range(lo, hi + 1):
        block = _generator_block(name, k)
        if block is None:
            return None
        flat.extend(block)
    return tuple(flat)


def export_certificate(ring: GeneratedRing, label: str, target: Sequence[int], witness: Expr) -> Dict[str, Any]:
    """Certificate for `target` (flattened) built from `witness`."""
    env = ring.environment
    return {
        "schema": CERTIFICATE_SCHEMA,
        "label": label,
        "window": str(ring.window),
        "target": [int(c) for c in target],
        "expression": witness.to_json(),
        "generators": {name: list(env[name].flatten()) for name in generator_names(witness)},
    }


def _flat_eval(node: Any, gens: Mapping[str, Flat], width: int) -> Flat:
    tag = node[0]
    if tag == "0":
        return (0,) * width
    if tag == "gen":
        return tuple(gens[node[1]])
    if tag == "-":
        return tuple((-c) % 8 for c in _flat_eval(node[1], gens, width))
    left = _flat_eval(node[1], gens, width)
    right = _flat_eval(node[2], gens, width)
    if tag == "+":
        return tuple((x + y) % 8 for x, y in zip(left, right))
    if tag == "*":
        return tuple((x * y) % 8 for x, y in zip(left, right))
    raise ValueError(f"Unknown expression tag {tag!r}")


def check_certificate(cert: Mapping[str, Any]) -> bool:
    """Re-check a certificate against generators rebuilt from their names."""
    if cert.get("schema") != CERTIFICATE_SCHEMA:
        raise ValueError(f"Unsupported certificate schema {cert.get('schema')!r}")
    expr = expr_from_json(cert["expression"])
    window = cert["window"]
    target = tuple(int(c) % 8 for c in cert["target"])
    listed = {name: tuple(int(c) % 8 for c in values) for name, values in cert["generators"].items()}

    gens: Dict[str, Flat] = {}
    for name in set(listed) | set(generator_names(expr)):
        expected = expected_generator(name, window)
        if expected is None:
            logger.warning(f"Certificate {cert.get('label')!r} uses unknown generator {name!r}")
            return False
        if name in listed and listed[name] != expected:
            logger.warning(f"Certificate {cert.get('label')!r} lists wrong values for {name!r}")
            return False
        gens[name] = expected

    lo, hi = _parse_window(window)
    width = 3 * (hi - lo + 1)
    if len(target) != width:
        return False
    return _flat_eval(cert["expression"], gens, width) == target


def write_certificates(certs: List[Dict[str, Any]], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump({"schema": CERTIFICATE_SCHEMA, "certificates": certs}, f, indent=2, sort_keys=True)
    logger.info(f"Wrote {len(certs)} certificates to {path}")


def read_certificates(path: Path) -> List[Dict[str, Any]]:
    with open(path, "r") as f:
        data = json.load(f)
    return list(data["certificates"])
