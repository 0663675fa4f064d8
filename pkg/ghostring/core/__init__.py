"""Core GhostRing functionality."""
