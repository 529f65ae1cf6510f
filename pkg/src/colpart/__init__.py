"""Euler-type recurrences for colored and regular partition functions."""

__version__ = "0.1.0"
