"""Rigorous certification of rotational horseshoes for annulus maps."""

__version__ = "0.1.0"
