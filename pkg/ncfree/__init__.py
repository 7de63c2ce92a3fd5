"""Exact combinatorics of free probability: non-crossing partitions, boxed-star products,
free cumulants and R-diagonal pairs."""

__version__ = "0.1.0"
