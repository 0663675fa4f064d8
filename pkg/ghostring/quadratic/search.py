"""
Search for a set with Q3 but not Q.

Exhaustive mode scans every subset of F2^n (n <= 4), testing one
representative per orbit of the affine group; Q and Q3 are affine
invariants.  Random mode hill-climbs on the number of failing 3-flats with
independent restarts and can resume from a saved state.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.parallel import parallel_map
from ..core.seeds import derive_rng
from .gf2 import PointSet, QuadPoly, has_Q, monomial_count, solution_set
from .subspaces import (
    AffineSubspace3, FlatIndex, agl_generators, has_Q3, restrict_to_subspace, subspaces_for,
)

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 4
FOUND = "found"
ABSENT = "absent"
EXHAUSTED = "budget_exhausted"

STATE_SCHEMA = "ghostring/sindi-state@1"
CERTIFICATE_SCHEMA = "ghostring/sindi-certificate@1"


@dataclass
class SearchOutcome:
    """Result of a search; `status` is found, absent (definitive) or budget_exhausted."""
    n: int
    mode: str
    status: str
    counterexample: Optional[PointSet] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def definitive(self) -> bool:
        return self.status in (FOUND, ABSENT)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mode": self.mode,
            "status": self.status,
            "counterexample": self.counterexample.hex() if self.counterexample else None,
            "stats": self.stats,
        }


def is_counterexample(s: PointSet) -> bool:
    """Q3 holds and Q fails, each decided independently."""
    return has_Q3(s)[0] and has_Q(s) is None


def _byte_tables(perm: Sequence[int]) -> List[List[int]]:
    """Lookup tables mapping each byte of a mask to its permuted bits."""
    size = len(perm)
    tables = []
    for start in range(0, size, 8):
        table = []
        for byte in range(256):
            out = 0
            for bit in range(8):
                if (byte >> bit) & 1 and start + bit < size:
                    out |= 1 << perm[start + bit]
            table.append(out)
        tables.append(table)
    return tables


def _apply_tables(mask: int, tables: List[List[int]]) -> int:
    out = 0
    for k, table in enumerate(tables):
        out |= table[(mask >> (8 * k)) & 0xFF]
    return out


def orbit_representatives(n: int) -> List[int]:
    """Smallest mask of each orbit of AGL(n, 2) on subsets of F2^n."""
    total = 1 << (1 << n)
    tables = [_byte_tables(g.permutation()) for g in agl_generators(n)]
    seen = bytearray(total)
    reps = []
    for mask in range(total):
        if seen[mask]:
            continue
        reps.append(mask)
        seen[mask] = 1
        stack = [mask]
        while stack:
            current = stack.pop()
            for table in tables:
                image = _apply_tables(current, table)
                if not seen[image]:
                    seen[image] = 1
                    stack.append(image)
    return reps


def _scan_chunk(task: Tuple[int, Tuple[int, ...]]) -> Optional[int]:
    n, masks = task
    for mask in masks:
        if is_counterexample(PointSet(n, mask)):
            return mask
    return None


def exhaustive_search(n: int, workers: int = 1, chunk_size: int = 64) -> SearchOutcome:
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"Exhaustive search supports n <= {EXHAUSTIVE_LIMIT}, got {n}")
    if n < 3:
        raise ValueError(f"Q3 needs n >= 3, got {n}")
    reps = orbit_representatives(n)
    chunks = [(n, tuple(reps[i:i + chunk_size])) for i in range(0, len(reps), chunk_size)]
    hits = [m for m in parallel_map(_scan_chunk, chunks, workers) if m is not None]
    stats = {"subsets": 1 << (1 << n), "orbits": len(reps), "flats": len(subspaces_for(n))}
    logger.info(f"Exhaustive scan of F2^{n}: {len(reps)} orbits, {len(hits)} counterexample orbits")
    if hits:
        return SearchOutcome(n, "exhaustive", FOUND, PointSet(n, min(hits)), stats)
    return SearchOutcome(n, "exhaustive", ABSENT, None, stats)


@dataclass(frozen=True)
class _Restart:
    n: int
    seed: int
    index: int
    steps: int


def _climb(task: _Restart) -> Dict[str, Any]:
    """One hill-climbing restart on the number of failing 3-flats."""
    rng = derive_rng(task.seed, f"sindi/restart/{task.index}")
    flats = FlatIndex(task.n)
    points = 1 << task.n
    mask = _random_mask(rng, points)
    failing = set(flats.failing(mask))
    best = len(failing)
    for step in range(task.steps):
        if not failing:
            if has_Q(PointSet(task.n, mask)) is None:
                return {"restart": task.index, "steps": step, "mask": mask, "best": 0}
            # a quadratic solution set: move away from it
            point = int(rng.integers(0, points))
            mask ^= 1 << point
            failing = set(flats.failing(mask))
            continue
        point = int(rng.integers(0, points))
        candidate = flats.failing_after_flip(mask, failing, point)
        if len(candidate) <= len(failing):
            mask ^= 1 << point
            failing = candidate
            best = min(best, len(failing))
    return {"restart": task.index, "steps": task.steps, "mask": None, "best": best}


def _random_mask(rng, points: int) -> int:
    mask = 0
    for k in range(0, points, 32):
        mask |= int(rng.integers(0, 1 << 32)) << k
    return mask & ((1 << points) - 1)


def load_state(path: Path) -> Dict[str, Any]:
    with open(path, "r") as f:
        state = json.load(f)
    if state.get("schema") != STATE_SCHEMA:
        raise ValueError(f"{path} is not a search state file")
    return state


def save_state(path: Path, state: Dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as f:
        json.dump(state, f, indent=2, sort_keys=True)
    tmp.replace(path)


def random_search(
    n: int,
    budget: int,
    seed: int,
    restarts: int = 16,
    workers: int = 1,
    resume: Optional[Path] = None,
) -> SearchOutcome:
    """Hill climbing with `restarts` restarts sharing `budget` steps.

    Restart r draws from the stream 'sindi/restart/r', so the outcome does
    not depend on the worker count.  With `resume` the state file is read if
    present and rewritten after every batch of restarts.
    """
    if n < 3:
        raise ValueError(f"Q3 needs n >= 3, got {n}")
    steps = max(1, budget // max(1, restarts))
    state: Dict[str, Any] = {
        "schema": STATE_SCHEMA, "n": n, "seed": seed, "budget": budget,
        "restarts": restarts, "completed": [], "found": None,
    }
    if resume is not None and resume.exists():
        loaded = load_state(resume)
        for key in ("n", "seed", "budget", "restarts"):
            if loaded[key] != state[key]:
                raise ValueError(f"State file {resume} was written for {key}={loaded[key]}, not {state[key]}")
        state = loaded
        logger.info(f"Resuming search from {resume}: {len(state['completed'])} restarts done")

    done = {r["restart"] for r in state["completed"]}
    pending = [r for r in range(restarts) if r not in done]
    batch = max(1, workers)
    while pending and state["found"] is None:
        current, pending = pending[:batch], pending[batch:]
        results = parallel_map(_climb, [_Restart(n, seed, r, steps) for r in current], workers)
        state["completed"].extend(results)
        hits = sorted((r["restart"], r["mask"]) for r in results if r["mask"] is not None)
        if hits:
            state["found"] = {"restart": hits[0][0], "mask": hits[0][1]}
        if resume is not None:
            save_state(resume, state)

    stats = {
        "restarts": len(state["completed"]),
        "steps_per_restart": steps,
        "best": min((r["best"] for r in state["completed"]), default=None),
    }
    if state["found"] is not None:
        s = PointSet(n, state["found"]["mask"])
        if not is_counterexample(s):
            raise RuntimeError(f"Search returned {s.hex()}, which fails re-verification")
        stats["restart"] = state["found"]["restart"]
        return SearchOutcome(n, "random", FOUND, s, stats)
    return SearchOutcome(n, "random", EXHAUSTED, None, stats)


def sindi_search(
    n: int,
    mode: str = "exhaustive",
    budget: int = 100_000,
    seed: int = 0,
    restarts: int = 16,
    workers: int = 1,
    resume: Optional[Path] = None,
) -> SearchOutcome:
    """A set with Q3 and without Q, if one is found.

    Exhaustive mode is definitive for its dimension.  Random mode reports a
    budget_exhausted status when nothing is found.
    """
    if mode == "exhaustive":
        outcome = exhaustive_search(n, workers)
    elif mode == "random":
        outcome = random_search(n, budget, seed, restarts, workers, resume)
    else:
        raise ValueError(f"Unknown search mode '{mode}'")
    if outcome.counterexample is not None and not is_counterexample(outcome.counterexample):
        raise RuntimeError(f"Counterexample {outcome.counterexample.hex()} fails re-verification")
    return outcome


def counterexample_certificate(s: PointSet) -> Dict[str, Any]:
    """S as a hex mask plus, per 3-flat, a quadratic cutting out the restriction."""
    subspaces = []
    for w in subspaces_for(s.n):
        q = has_Q(restrict_to_subspace(s, w))
        if q is None:
            raise ValueError(f"{s.hex()} fails Q on the flat {w.to_json()}")
        subspaces.append(dict(w.to_json(), quadratic=q.coefficient_bits()))
    return {"schema": CERTIFICATE_SCHEMA, "n": s.n, "mask": s.hex(), "subspaces": subspaces}


def check_counterexample_certificate(cert: Dict[str, Any]) -> bool:
    """Re-check a certificate: every listed quadratic cuts out its restriction,
    all flats are listed, and no quadratic cuts out the whole set."""
    if cert.get("schema") != CERTIFICATE_SCHEMA:
        raise ValueError(f"Unsupported certificate schema {cert.get('schema')!r}")
    n = int(cert["n"])
    s = PointSet(n, int(cert["mask"], 16))
    listed = set()
    for entry in cert["subspaces"]:
        w = AffineSubspace3(n, int(entry["base"]), tuple(int(d) for d in entry["dirs"]))  # type: ignore[arg-type]
        coeffs = sum(bit << k for k, bit in enumerate(entry["quadratic"]))
        if solution_set(QuadPoly(3, coeffs)) != restrict_to_subspace(s, w):
            return False
        listed.add(frozenset(w.points()))
    expected = {frozenset(w.points()) for w in subspaces_for(n)}
    return listed == expected and has_Q(s) is None


def check_q_implies_q3(n: int, samples: int, seed: int) -> Optional[QuadPoly]:
    """Solution sets of seeded random quadratics all have Q3.

    Returns the first quadratic whose solution set fails, or None.
    """
    rng = derive_rng(seed, "sindi/q-implies-q3")
    width = monomial_count(n)
    for _ in range(samples):
        coeffs = 0
        for k, bit in enumerate(rng.integers(0, 2, size=width)):
            coeffs |= int(bit) << k
        q = QuadPoly(n, coeffs)
        if not has_Q3(solution_set(q))[0]:
            return q
    return None
