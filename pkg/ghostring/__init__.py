"""
GhostRing - Verification Toolkit for the Z8 Ghost-Element Argument

Finite, reproducible checks behind the statement that Z8 admits no natural
duality: a ring of eventually constant sequences, its homomorphisms into Z8,
the ghost map on them, and a search for sets with the local-but-not-global
quadratic property.
"""

__version__ = "1.0.0"
__author__ = "GhostRing Authors"
__license__ = "MIT"

from .core.config import Config
from .core.logger import setup_logging

__all__ = ["Config", "setup_logging"]
