"""Parity-check claim verification."""
