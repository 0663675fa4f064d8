"""
Named random streams derived from the single run seed.
"""

import zlib
from typing import Tuple

import numpy as np


def stream_key(name: str) -> Tuple[int, ...]:
    return (zlib.crc32(name.encode("utf-8")),)


def derive_rng(seed: int, name: str) -> np.random.Generator:
    """Independent generator for the stream `name` under `seed`.

    The same (seed, name) always yields the same stream, whichever process
    asks for it.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=stream_key(name))))
