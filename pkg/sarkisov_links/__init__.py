"""Exact classifier of Sarkisov links for blowups of rank-one Fano threefolds."""

__version__ = "0.1.0"
