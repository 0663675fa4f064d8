"""
The parity-check invariant separating the ghost from D.

Products of pairs of generators of D, with every a^2 and b^2 component
dropped, are vectors over {0, ab}.  Each of them is either eventually 0 with
an even number of ab entries, or eventually ab with an odd number of 0
entries.  The condition is preserved by addition, so every element of
<ab>^Z inside D satisfies it, while the constant ab vector does not.
Every punctured ghost does satisfy it and has an explicit expression in the
generators.
"""

import itertools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..closure.certificates import check_certificate, export_certificate, write_certificates
from ..closure.subring import DEFAULT_CAP, build_D, contains
from ..core.errors import NotInRingError
from ..core.expressions import Add, Expr, Gen, Mul, Neg, evaluate, generator_names
from ..core.parallel import parallel_map
from ..core.ring import AB, ZERO, ab_component
from ..core.seeds import derive_rng
from ..core.vectors import (
    ECVector, Window, gen_abar, gen_bbar, gen_ebar, generator_vector, ghost, punctured_ghost,
)
from ..report import Report

logger = logging.getLogger(__name__)

# e-bar range for the exhaustive closure-under-addition check
CLOSURE_RANGE = Window(-4, 4)
CLOSURE_DEPTH = 3

GHOST_EXCLUSION = (
    "Every tested element of <ab>^Z in D satisfies the parity check and the check is "
    "closed under addition; the ghost fails it, so the ghost would contradict the "
    "invariant if it lay in D."
)


@dataclass(frozen=True)
class FamilyMember:
    """A reduced pairwise generator product with the names of its factors."""
    left: str
    right: str
    vector: ECVector

    @property
    def label(self) -> str:
        return f"{self.left}*{self.right}"


def validate_parity_vector(v: ECVector) -> ECVector:
    """Return v unchanged if all of its values lie in {0, ab}."""
    for value in v.values():
        if value != ZERO and value != AB:
            raise NotInRingError(f"{v!r} takes the value {value!r} outside {{0, ab}}")
    return v


def parity_check(v: ECVector) -> bool:
    """Eventually 0 with evenly many ab, or eventually ab with oddly many 0."""
    validate_parity_vector(v)
    count = len(v.exceptions)
    if v.eventual == ZERO:
        return count % 2 == 0
    return count % 2 == 1


def reduce_squares(v: ECVector) -> ECVector:
    """Replace every coordinate by its ab-component (a^2 and b^2 dropped, -ab = ab)."""

    def reduced(x):
        return AB if ab_component(x) else ZERO

    return ECVector.build(reduced(v.eventual), {i: reduced(x) for i, x in v.exceptions})


def family_generators(index_range: Window, include_d2: bool = True) -> List[Tuple[str, ECVector]]:
    """b-bar, a-bar_0 and e-bar_i over the range, then the D2 generators over the range."""
    gens: List[Tuple[str, ECVector]] = [("bbar", gen_bbar()), ("abar0", gen_abar(0))]
    gens.extend((f"e[{i}]", gen_ebar(i)) for i in index_range.indices())
    if include_d2:
        for j in index_range.indices():
            gens.append((f"d2a[{j}]", generator_vector(f"d2a[{j}]")))
            gens.append((f"d2b[{j}]", generator_vector(f"d2b[{j}]")))
    return gens


def claim_generating_family(index_range: Window, include_d2: bool = True) -> List[FamilyMember]:
    """reduce_squares of the product of every pair (squares included) of generators."""
    gens = family_generators(index_range, include_d2)
    family = []
    for i, (x_name, x) in enumerate(gens):
        for y_name, y in gens[i:]:
            family.append(FamilyMember(x_name, y_name, reduce_squares(x * y)))
    logger.debug(f"Generating family over {index_range}: {len(family)} products")
    return family


def symbolic_witness(i: int) -> Expr:
    """Generator expression equal to punctured_ghost(i) on all of Z.

    b-bar * a-bar_0 minus b^2 at 0 is ab with zeros at -1, 0, 1; adding
    e_{-1} * e_1 (ab at -1 and 0) leaves the single zero at 1.  Each further
    e_k * e_{k+2} moves the zero one step.
    """
    expr: Expr = Add(
        Add(Mul(Gen("bbar"), Gen("abar0")), Neg(Gen("d2b[0]"))),
        Mul(Gen("e[-1]"), Gen("e[1]")),
    )
    for k in range(min(1, i), max(1, i)):
        expr = Add(expr, Mul(Gen(f"e[{k}]"), Gen(f"e[{k + 2}]")))
    return expr


def evaluate_symbolic(expr: Expr) -> ECVector:
    env = {name: generator_vector(name) for name in generator_names(expr)}
    return evaluate(expr, env, ECVector.zero())


@dataclass(frozen=True)
class SumChunk:
    """One seeded batch of random formal sums."""
    seed: int
    index: int
    count: int
    sum_length: int
    vectors: Tuple[ECVector, ...]


def _check_sum_chunk(chunk: SumChunk) -> Optional[Dict[str, object]]:
    """First failing sum in the chunk, or None."""
    rng = derive_rng(chunk.seed, f"claim/sums/{chunk.index}")
    size = len(chunk.vectors)
    for sample in range(chunk.count):
        length = int(rng.integers(1, chunk.sum_length + 1))
        picks = rng.integers(0, size, size=length)
        total = ECVector.zero()
        for p in picks:
            total = total + chunk.vectors[int(p)]
        if not parity_check(total):
            return {
                "chunk": chunk.index,
                "sample": sample,
                "members": [int(p) for p in picks],
                "vector": total.to_json(),
            }
    return None


def check_random_sums(
    family: Sequence[FamilyMember],
    sum_length: int,
    samples: int,
    seed: int,
    chunk_size: int = 500,
    workers: int = 1,
) -> List[Dict[str, object]]:
    """Parity-check `samples` random sums of at most `sum_length` family members.

    Chunk c draws from the stream 'claim/sums/c', so results do not depend on
    the worker count.
    """
    vectors = tuple(m.vector for m in family)
    chunks = []
    for index, start in enumerate(range(0, samples, chunk_size)):
        chunks.append(SumChunk(seed, index, min(chunk_size, samples - start), sum_length, vectors))
    failures = [f for f in parallel_map(_check_sum_chunk, chunks, workers) if f is not None]
    for failure in failures:
        failure["labels"] = [family[p].label for p in failure["members"]]  # type: ignore[union-attr]
    return failures


def check_closure_under_addition(family: Sequence[FamilyMember], depth: int = CLOSURE_DEPTH) -> Optional[List[str]]:
    """Every sum of up to `depth` distinct reduced products passes the check.

    Returns the labels of a failing sum, or None.
    """
    distinct: Dict[ECVector, str] = {}
    for member in family:
        if not member.vector.is_zero():
            distinct.setdefault(member.vector, member.label)
    items = list(distinct.items())
    for size in range(1, depth + 1):
        for combo in itertools.combinations_with_replacement(items, size):
            total = ECVector.zero()
            for vector, _ in combo:
                total = total + vector
            if not parity_check(total):
                return [label for _, label in combo]
    return None


def verify_claim(
    index_range: Window,
    sum_length: int = 8,
    samples: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    chunk_size: int = 500,
    witness_window: Window = Window(-5, 5),
    witness_indices: Sequence[int] = (-1, 0, 1, 2),
    cap: int = DEFAULT_CAP,
    certificates: Optional[Path] = None,
) -> Report:
    """Check the parity invariant on the generating family and its sums, then
    find and re-check explicit memberships of punctured ghosts."""
    report = Report("verify-claim")
    report.seeds["claim/sums"] = seed
    report.data["range"] = str(index_range)

    with report.timed("family"):
        family = claim_generating_family(index_range)
        failing = [m for m in family if not parity_check(m.vector)]
        report.check("family_parity", not failing, [(m.label, m.vector) for m in failing[:5]])
        d2_nonzero = [
            m for m in family
            if (m.left.startswith("d2") or m.right.startswith("d2")) and not m.vector.is_zero()
        ]
        report.check("d2_products_vanish", not d2_nonzero, [m.label for m in d2_nonzero[:5]])
        report.data["family_size"] = len(family)

    with report.timed("random_sums"):
        failures = check_random_sums(family, sum_length, samples, seed, chunk_size, workers)
        report.check("random_sums", not failures, failures[:1])
        report.data["random_sums"] = {"samples": samples, "max_length": sum_length}

    with report.timed("closure_under_addition"):
        bad = check_closure_under_addition(claim_generating_family(CLOSURE_RANGE))
        report.check("closure_under_addition", bad is None, bad)

    report.check("ghost_excluded", not parity_check(ghost()), ghost())
    punctured_bad = [i for i in index_range.indices() if not parity_check(punctured_ghost(i))]
    report.check("punctured_pass", not punctured_bad, punctured_bad)

    symbolic_bad = [i for i in index_range.indices() if evaluate_symbolic(symbolic_witness(i)) != punctured_ghost(i)]
    report.check("symbolic_witnesses", not symbolic_bad, symbolic_bad)

    with report.timed("constructive_membership"):
        ring = build_D(witness_window, cap=cap)
        certs = []
        missing = []
        for i in witness_indices:
            target = punctured_ghost(i).restrict(witness_window)
            membership = contains(ring, target)
            if not membership.found or membership.witness is None:
                missing.append(i)
                continue
            cert = export_certificate(ring, f"punctured_ghost({i})", target.flatten(), membership.witness)
            if not check_certificate(cert):
                missing.append(i)
                continue
            certs.append(cert)
        report.check("constructive_membership", not missing, missing)
        report.data["witness_window"] = str(witness_window)
        report.data["witnesses"] = {c["label"]: len(c["generators"]) for c in certs}
        if certificates is not None:
            write_certificates(certs, certificates)

    report.data["statement"] = GHOST_EXCLUSION
    logger.info(f"Claim verification {'passed' if report.passed else 'FAILED'} over {index_range}")
    return report
