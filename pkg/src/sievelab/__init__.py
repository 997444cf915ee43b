"""Computational laboratory for the abstract large sieve."""
__version__ = "0.1.0"
