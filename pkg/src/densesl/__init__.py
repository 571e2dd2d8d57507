"""Congruence quotients of dense subgroups of SL(n) over rings of integers."""

__version__ = "0.1.0"
