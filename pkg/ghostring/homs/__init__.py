"""Homomorphisms into Z8."""
