"""Subring closure, membership and certificates."""
