"""Quadratic sets over F2."""
